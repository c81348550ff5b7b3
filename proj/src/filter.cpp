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

#include "qsubset/filter.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qsubset/errors.hpp"
#include "qsubset/pea.hpp"
#include "qsubset/qsim/ops.hpp"

namespace qsubset {

namespace {

constexpr double kSupport = 1e-12;

// Reads the compared field out of a basis index.
class FieldReader {
 public:
  FieldReader(const qsim::RegisterLayout& layout, int field_shift)
      : offset_(layout.bit_offset(kPhaseSegment) + field_shift),
        width_(layout.segment(kPhaseSegment).num_qubits - field_shift),
        index_bits_(layout.segment(kIndexSegment).num_qubits) {
    if (field_shift < 0 || width_ < 1) throw UsageError("field shift outside the phase register");
  }

  std::uint64_t field(Eigen::Index basis) const {
    return (static_cast<std::uint64_t>(basis) >> offset_) &
           ((std::uint64_t{1} << width_) - 1);
  }
  std::uint64_t index(Eigen::Index basis) const {
    return static_cast<std::uint64_t>(basis) & ((std::uint64_t{1} << index_bits_) - 1);
  }
  int index_bits() const { return index_bits_; }

 private:
  int offset_;
  int width_;
  int index_bits_;
};

}  // namespace

qsim::StateVectord mark_below_target(qsim::StateVectord state, std::uint64_t target,
                                     int field_shift) {
  const FieldReader reader(state.layout(), field_shift);
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (reader.field(i) < target) a[i] = -a[i];
  }
  return state;
}

double good_probability(const qsim::StateVectord& state, std::uint64_t target,
                        int field_shift) {
  const FieldReader reader(state.layout(), field_shift);
  double p = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (reader.field(i) < target) p += std::norm(state[i]);
  }
  return p;
}

int plan_iterations(std::uint64_t count_L, std::uint64_t total_N,
                    std::optional<int> override_k) {
  if (count_L == 0) throw InfeasibleError("L is empty: no subset sums below the target");
  if (count_L > total_N) throw UsageError("|L| exceeds the number of subsets");
  if (override_k) {
    if (*override_k < 0) throw UsageError("iteration count must be non-negative");
    return *override_k;
  }
  const double theta = std::asin(std::sqrt(double(count_L) / double(total_N)));
  const double k = std::round(std::numbers::pi / (4.0 * theta) - 0.5);
  return k < 0.0 ? 0 : static_cast<int>(k);
}

std::uint64_t count_feasible(const qsim::StateVectord& state, std::uint64_t target,
                             int field_shift) {
  const FieldReader reader(state.layout(), field_shift);
  const std::size_t n_index = std::size_t{1} << reader.index_bits();
  std::vector<char> supported(n_index, 0);
  std::vector<char> violates(n_index, 0);
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (std::norm(state[i]) <= kSupport) continue;
    const auto j = reader.index(i);
    supported[j] = 1;
    if (reader.field(i) >= target) violates[j] = 1;
  }
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < n_index; ++j) count += supported[j] && !violates[j];
  return count;
}

std::uint64_t estimate_feasible_count(const qsim::StateVectord& state,
                                      std::uint64_t target, int samples, Rng& rng,
                                      int field_shift) {
  if (samples < 1) throw UsageError("need at least one sample");
  const FieldReader reader(state.layout(), field_shift);
  const Eigen::VectorXd probs = state.probabilities();
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    const auto i = rng.categorical({probs.data(), static_cast<std::size_t>(probs.size())});
    hits += reader.field(static_cast<Eigen::Index>(i)) < target;
  }
  const double n_index = std::ldexp(1.0, reader.index_bits());
  return static_cast<std::uint64_t>(std::llround(n_index * hits / samples));
}

qsim::StateVectord project_feasible(qsim::StateVectord state, std::uint64_t target,
                                    int field_shift) {
  const double kept = good_probability(state, target, field_shift);
  if (kept <= qsim::kImpossibleOutcome) {
    throw InfeasibleError("no probability left below the target");
  }
  const FieldReader reader(state.layout(), field_shift);
  const double scale = 1.0 / std::sqrt(kept);
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] = reader.field(i) < target ? a[i] * scale : std::complex<double>(0.0);
  }
  return state;
}

FilterResult run_filter(const qsim::StateVectord& psi1, const qsim::StateVectord& pivot,
                        std::uint64_t target, int k, const FilterOptions& options) {
  if (k < 0) throw UsageError("iteration count must be non-negative");
  FilterReport report;
  report.count_L = count_feasible(psi1, target, options.field_shift);
  const std::uint64_t n_index = std::uint64_t{1}
                                << psi1.layout().segment(kIndexSegment).num_qubits;
  report.count_Lprime = n_index - report.count_L;
  if (report.count_L == 0) {
    throw InfeasibleError("L is empty: no subset sums below the target");
  }
  report.iterations_k = k;
  report.good_probability_before = good_probability(psi1, target, options.field_shift);

  qsim::StateVectord state = psi1;
  for (int it = 0; it < k; ++it) {
    state = qsim::reflect_about(mark_below_target(std::move(state), target, options.field_shift),
                                pivot);
  }
  report.good_probability_after = good_probability(state, target, options.field_shift);
  report.residual_bad_probability = state.norm_squared() - report.good_probability_after;
  if (options.exact_filter) {
    state = project_feasible(std::move(state), target, options.field_shift);
    report.projected = true;
  }
  return {std::move(state), report};
}

}  // namespace qsubset
