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

#pragma once

// Bit-by-bit maximisation of the phase register.
//
// Qubits of the search field are decided most significant first. For each
// one the marginal P(1) is sampled; when no 1 shows up the qubit is pushed
// toward |1> by rounds of G = S_1 * Zhat, where Zhat negates the components
// that match the decided prefix and carry a 1 on the current qubit and S_1
// reflects about the stored post-filter state psi2 (the same S_1 for every
// qubit). A qubit that never reads 1 is set to 0.
//
// Measurements are simulated by peeking: probabilities are read, a
// Bernoulli draw decides, and the state is projected only on acceptance.
// Accepting bit b projects onto (decided prefix, b), which stands for the
// fresh qubits that replace the measured ones.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsubset/encoding.hpp"
#include "qsubset/qsim/state_vector.hpp"

namespace qsubset {

struct MaxFindPolicy {
  int samples_per_round = 3;
  int aa_rounds_max = 2;
  bool revert_on_zero = true;
  /// Deterministic mode: decide 1 iff P(1) >= threshold, no sampling, no AA.
  std::optional<double> greedy_threshold;

  /// Throws UsageError on out-of-range fields.
  void validate() const;
  bool greedy() const { return greedy_threshold.has_value(); }

  bool operator==(const MaxFindPolicy&) const = default;
};

/// Phase qubits [first, first + width) searched for the maximum.
struct SearchField {
  int first = 0;
  /// 0 means "to the end of the phase register".
  int width = 0;
};

struct Draw {
  int round = 0;  ///< 0 before any AA round, r after r rounds
  double probability = 0.0;
  int outcome = 0;
  /// A drawn 1 is rejected when the decided prefix has no mass behind it.
  bool accepted = false;

  bool operator==(const Draw&) const = default;
};

struct QubitRecord {
  int qubit = 0;  ///< position within the search field
  double probability_one_initial = 0.0;
  int aa_rounds_applied = 0;
  /// P(1) after the last AA round; equals the initial value when none ran.
  double probability_one_after_aa = 0.0;
  int samples_drawn = 0;
  int decided_bit = 0;
  /// Probability of the projection onto (prefix, decided bit).
  double collapse_probability = 0.0;
  std::vector<Draw> draws;

  bool operator==(const QubitRecord&) const = default;
};

struct MaxFindTrace {
  std::vector<QubitRecord> qubits;
  /// One U_1 / U_1^* re-run pair per S_1 application.
  int re_preparations = 0;
  int reflections = 0;

  bool operator==(const MaxFindTrace&) const = default;
};

struct MaxFindResult {
  std::uint64_t phi_int = 0;
  SubsetMask subset;
  MaxFindTrace trace;
  bool exact = false;

  bool operator==(const MaxFindResult&) const = default;
};

/// Called with a label and the state after each AA round and each decision.
using MaxFindObserver = std::function<void(std::string_view, const qsim::StateVectord&)>;

struct MaxFindOptions {
  SearchField field;
  MaxFindObserver observer;
};

/// Negates the components whose field bits 0..t-1 equal `prefix` and whose
/// bit t is 1.
qsim::StateVectord mark_candidate_bit(qsim::StateVectord state, int t,
                                      std::span<const int> prefix,
                                      const SearchField& field = {});

/// One round of reflect_about(., psi2) o mark_candidate_bit.
qsim::StateVectord amplify_bit(qsim::StateVectord state, const qsim::StateVectord& psi2,
                               int t, std::span<const int> prefix,
                               const SearchField& field = {});

/// Probability mass whose leading field bits equal `bits`.
double prefix_mass(const qsim::StateVectord& state, std::span<const int> bits,
                   const SearchField& field = {});

/// Projects onto the leading field bits `bits` and renormalises. Throws
/// ImpossibleOutcomeError when the prefix carries no mass.
qsim::StateVectord collapse_prefix(qsim::StateVectord state, std::span<const int> bits,
                                   const SearchField& field = {});

MaxFindResult run_maxfind(const qsim::StateVectord& psi2, const MaxFindPolicy& policy,
                          std::uint64_t rng_seed, const MaxFindOptions& options = {});

struct FourBlockDiagnostics {
  std::array<double, 4> norms{};  ///< ||x_0||^2 .. ||x_3||^2
  double d_x = 0.0;               ///< ||x_2||^2 - ||x_3||^2
};

/// Splits the amplitudes into four equal blocks by the two top basis bits.
FourBlockDiagnostics four_block_decomposition(const qsim::StateVectord& state);

}  // namespace qsubset
