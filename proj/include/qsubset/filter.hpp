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

// Amplitude-amplification filter that keeps the eigenpairs with phase < W.
//
// Components are "good" when their phase-register integer, shifted right by
// `field_shift` bits, is strictly below the target. The shift lets the
// knapsack encoding compare only its weight field; subset-sum uses 0.

#include <cstdint>
#include <optional>

#include "qsubset/qsim/state_vector.hpp"
#include "qsubset/rng.hpp"

namespace qsubset {

struct FilterReport {
  std::uint64_t count_L = 0;
  std::uint64_t count_Lprime = 0;
  int iterations_k = 0;
  double good_probability_before = 0.0;
  double good_probability_after = 0.0;
  double residual_bad_probability = 0.0;
  /// Whether the exact-filter projection ran after the iterations.
  bool projected = false;

  bool operator==(const FilterReport&) const = default;
};

struct FilterResult {
  qsim::StateVectord state;
  FilterReport report;
};

struct FilterOptions {
  /// Project out every phase >= W after the k iterations and renormalise.
  bool exact_filter = false;
  int field_shift = 0;
};

/// Negates every amplitude whose (shifted) phase integer is below `target`.
qsim::StateVectord mark_below_target(qsim::StateVectord state, std::uint64_t target,
                                     int field_shift = 0);

/// Probability mass on (shifted) phases below `target`.
double good_probability(const qsim::StateVectord& state, std::uint64_t target,
                        int field_shift = 0);

/**
 * Grover iteration count round(pi / (4 asin(sqrt(L/N))) - 1/2), floored at 0.
 * `override_k` bypasses the formula but not the feasibility check.
 */
int plan_iterations(std::uint64_t count_L, std::uint64_t total_N,
                    std::optional<int> override_k = std::nullopt);

/**
 * Number of index values whose whole support sits at phase < target.
 * Reads amplitudes directly; this stands in for quantum counting.
 */
std::uint64_t count_feasible(const qsim::StateVectord& state, std::uint64_t target,
                             int field_shift = 0);

/// Sampling fallback for count_feasible: N times the fraction of `samples`
/// phase-register draws that fall below the target, rounded.
std::uint64_t estimate_feasible_count(const qsim::StateVectord& state,
                                      std::uint64_t target, int samples, Rng& rng,
                                      int field_shift = 0);

/// Removes every component at phase >= target and renormalises.
qsim::StateVectord project_feasible(qsim::StateVectord state, std::uint64_t target,
                                    int field_shift = 0);

/**
 * Applies G = reflect_about(., pivot) o mark_below_target k times to psi1.
 * Throws InfeasibleError when no index value is feasible.
 */
FilterResult run_filter(const qsim::StateVectord& psi1, const qsim::StateVectord& pivot,
                        std::uint64_t target, int k, const FilterOptions& options = {});

}  // namespace qsubset
