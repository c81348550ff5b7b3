// Copyright 2026 The qsubset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsubset/maxfind.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qsubset/errors.hpp"
#include "qsubset/pea.hpp"
#include "qsubset/qsim/ops.hpp"
#include "qsubset/rng.hpp"

namespace qsubset {

namespace {

// Basis bits of the search field, most significant first.
class FieldBits {
 public:
  FieldBits(const qsim::RegisterLayout& layout, const SearchField& field) {
    const int m = layout.segment(kPhaseSegment).num_qubits;
    const int width = field.width == 0 ? m - field.first : field.width;
    if (field.first < 0 || width < 1 || field.first + width > m) {
      throw UsageError("search field outside the phase register");
    }
    bits_.reserve(static_cast<std::size_t>(width));
    for (int t = 0; t < width; ++t) {
      bits_.push_back(layout.basis_bit(layout.qubit(kPhaseSegment, field.first + t)));
    }
  }

  int width() const { return static_cast<int>(bits_.size()); }
  int basis_bit(int t) const { return bits_[static_cast<std::size_t>(t)]; }

  int read(Eigen::Index basis, int t) const {
    return static_cast<int>((static_cast<std::uint64_t>(basis) >> basis_bit(t)) & 1);
  }

  bool matches(Eigen::Index basis, std::span<const int> bits) const {
    for (std::size_t t = 0; t < bits.size(); ++t) {
      if (read(basis, static_cast<int>(t)) != bits[t]) return false;
    }
    return true;
  }

  std::uint64_t value(Eigen::Index basis) const {
    std::uint64_t v = 0;
    for (int t = 0; t < width(); ++t) v = (v << 1) | static_cast<std::uint64_t>(read(basis, t));
    return v;
  }

  void check_prefix(std::span<const int> bits, std::size_t expected) const {
    if (bits.size() != expected) throw UsageError("decided prefix must hold exactly t bits");
    if (bits.size() > bits_.size()) throw UsageError("prefix longer than the search field");
    for (int b : bits) {
      if (b != 0 && b != 1) throw UsageError("prefix bits must be 0 or 1");
    }
  }

 private:
  std::vector<int> bits_;
};

std::string label(const char* what, int t, int round = -1) {
  std::string s = "qubit-" + std::to_string(t + 1) + "-" + what;
  if (round >= 0) s += "-" + std::to_string(round);
  return s;
}

}  // namespace

void MaxFindPolicy::validate() const {
  if (samples_per_round < 1) throw UsageError("samples_per_round must be at least 1");
  if (aa_rounds_max < 0) throw UsageError("aa_rounds_max must be non-negative");
  if (greedy_threshold && !(*greedy_threshold > 0.0 && *greedy_threshold <= 1.0)) {
    throw UsageError("greedy_threshold must lie in (0, 1]");
  }
}

qsim::StateVectord mark_candidate_bit(qsim::StateVectord state, int t,
                                      std::span<const int> prefix, const SearchField& field) {
  const FieldBits fb(state.layout(), field);
  if (t < 0 || t >= fb.width()) throw UsageError("qubit index outside the search field");
  fb.check_prefix(prefix, static_cast<std::size_t>(t));
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (fb.read(i, t) == 1 && fb.matches(i, prefix)) a[i] = -a[i];
  }
  return state;
}

qsim::StateVectord amplify_bit(qsim::StateVectord state, const qsim::StateVectord& psi2,
                               int t, std::span<const int> prefix, const SearchField& field) {
  return qsim::reflect_about(mark_candidate_bit(std::move(state), t, prefix, field), psi2);
}

double prefix_mass(const qsim::StateVectord& state, std::span<const int> bits,
                   const SearchField& field) {
  const FieldBits fb(state.layout(), field);
  fb.check_prefix(bits, bits.size());
  double mass = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (fb.matches(i, bits)) mass += std::norm(state[i]);
  }
  return mass;
}

qsim::StateVectord collapse_prefix(qsim::StateVectord state, std::span<const int> bits,
                                   const SearchField& field) {
  const FieldBits fb(state.layout(), field);
  const double mass = prefix_mass(state, bits, field);
  if (mass <= qsim::kImpossibleOutcome) {
    throw ImpossibleOutcomeError("contradictory trace: decided prefix has no probability");
  }
  const double scale = 1.0 / std::sqrt(mass);
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] = fb.matches(i, bits) ? a[i] * scale : std::complex<double>(0.0);
  }
  return state;
}

MaxFindResult run_maxfind(const qsim::StateVectord& psi2, const MaxFindPolicy& policy,
                          std::uint64_t rng_seed, const MaxFindOptions& options) {
  policy.validate();
  const FieldBits fb(psi2.layout(), options.field);
  if (psi2.norm_squared() <= qsim::kImpossibleOutcome) {
    throw InfeasibleError("max-finding needs a non-empty support");
  }
  const auto notify = [&](const std::string& what, const qsim::StateVectord& s) {
    if (options.observer) options.observer(what, s);
  };
  const auto& layout = psi2.layout();
  auto qubit_of = [&](int t) { return layout.qubit(kPhaseSegment, options.field.first + t); };

  Rng rng(rng_seed);
  MaxFindResult result;
  qsim::StateVectord current = psi2;
  std::vector<int> prefix;

  for (int t = 0; t < fb.width(); ++t) {
    QubitRecord rec;
    rec.qubit = t;
    rec.probability_one_initial = qsim::prob_one(current, qubit_of(t));
    rec.probability_one_after_aa = rec.probability_one_initial;

    int bit = 0;
    qsim::StateVectord base = current;
    if (policy.greedy()) {
      bit = rec.probability_one_initial >= *policy.greedy_threshold ? 1 : 0;
    } else {
      qsim::StateVectord work = current;
      std::vector<int> with_one = prefix;
      with_one.push_back(1);
      bool accepted = false;
      for (int round = 0; round <= policy.aa_rounds_max && !accepted; ++round) {
        double p = rec.probability_one_initial;
        if (round > 0) {
          work = amplify_bit(std::move(work), psi2, t, prefix, options.field);
          ++rec.aa_rounds_applied;
          ++result.trace.reflections;
          p = qsim::prob_one(work, qubit_of(t));
          rec.probability_one_after_aa = p;
          notify(label("aa", t, round), work);
        }
        for (int s = 0; s < policy.samples_per_round; ++s) {
          Draw draw{round, p, rng.bernoulli(p), false};
          ++rec.samples_drawn;
          if (draw.outcome == 1) {
            draw.accepted = prefix_mass(work, with_one, options.field) > qsim::kImpossibleOutcome;
          }
          rec.draws.push_back(draw);
          if (draw.accepted) {
            accepted = true;
            break;
          }
        }
      }
      if (accepted) {
        bit = 1;
        base = std::move(work);
      } else if (!policy.revert_on_zero) {
        base = std::move(work);
      }
    }

    prefix.push_back(bit);
    rec.decided_bit = bit;
    rec.collapse_probability = prefix_mass(base, prefix, options.field);
    current = collapse_prefix(std::move(base), prefix, options.field);
    notify(label("decided", t), current);
    result.trace.qubits.push_back(std::move(rec));
  }
  result.trace.re_preparations = result.trace.reflections;

  for (int b : prefix) result.phi_int = (result.phi_int << 1) | static_cast<std::uint64_t>(b);

  // Read the index register: its marginal after the final collapse.
  const int n = layout.segment(kIndexSegment).num_qubits;
  std::vector<double> marginal(std::size_t{1} << n, 0.0);
  for (Eigen::Index i = 0; i < current.dim(); ++i) {
    marginal[layout.extract(static_cast<std::uint64_t>(i), kIndexSegment)] +=
        std::norm(current[i]);
  }
  std::size_t mask = 0;
  if (policy.greedy()) {
    for (std::size_t j = 1; j < marginal.size(); ++j) {
      if (marginal[j] > marginal[mask] + qsim::kImpossibleOutcome) mask = j;
    }
  } else {
    mask = rng.categorical(marginal);
  }
  result.subset = SubsetMask{mask};

  result.exact = marginal[mask] > qsim::kImpossibleOutcome;
  for (Eigen::Index i = 0; i < current.dim(); ++i) {
    if (layout.extract(static_cast<std::uint64_t>(i), kIndexSegment) != mask) continue;
    if (std::norm(current[i]) > qsim::kImpossibleOutcome && fb.value(i) != result.phi_int) {
      result.exact = false;
    }
  }
  return result;
}

FourBlockDiagnostics four_block_decomposition(const qsim::StateVectord& state) {
  if (state.num_qubits() < 2) throw UsageError("four-block split needs at least two qubits");
  FourBlockDiagnostics d;
  const int shift = state.num_qubits() - 2;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    d.norms[static_cast<std::size_t>(i >> shift)] += std::norm(state[i]);
  }
  d.d_x = d.norms[2] - d.norms[3];
  return d;
}

}  // namespace qsubset
