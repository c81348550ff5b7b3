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

// Classical ground truth: exhaustive enumeration, the O(nW) reachable-sums
// table, and the two counting profiles the quantum heuristic relies on.
//
// Membership in L counts masks, not distinct sums.

#include <cstdint>
#include <optional>
#include <vector>

#include "qsubset/encoding.hpp"

namespace qsubset {

/// Enumeration limit for brute_force and assumption2_profile.
inline constexpr int kMaxEnumerationElements = 24;
/// Largest target dp_solve tabulates.
inline constexpr std::int64_t kMaxDpTarget = std::int64_t{1} << 30;

struct OracleReport {
  bool feasible = false;
  /// Meaningful only when feasible.
  std::uint64_t phi_max_int = 0;
  /// Every mask attaining phi_max_int, ascending.
  std::vector<SubsetMask> argmax_masks;
  std::uint64_t count_L = 0;
  std::uint64_t count_Lprime = 0;
};

/// Throws CapacityError above kMaxEnumerationElements.
OracleReport brute_force(const ProblemInstance& instance);

/// Largest reachable sum strictly below the target. Throws InfeasibleError
/// when the target is 0 and CapacityError above kMaxDpTarget.
std::uint64_t dp_solve(const ProblemInstance& instance);

/// |L'| / |L|; throws InfeasibleError when L is empty.
double assumption1_ratio(const OracleReport& report);

struct BitConditional {
  int t = 0;
  /// Members of L matching phi_max on bits 0..t-1 with bit t set.
  std::uint64_t ones = 0;
  /// Members of L matching phi_max on bits 0..t-1.
  std::uint64_t matching = 0;

  double probability() const { return double(ones) / double(matching); }
  bool operator==(const BitConditional&) const = default;
};

struct Assumption2Profile {
  /// b_0..b_{m-1}, most significant first.
  std::vector<int> phi_max_bits;
  /// One entry per bit; empty where no member of L matches the prefix.
  std::vector<std::optional<BitConditional>> conditionals;
  /// Smallest p_t over the bits where phi_max has a 1 (1.0 when none).
  double min_conditional = 1.0;

  std::uint64_t phi_max_int() const;
};

/// Walks phi_max's bits under the uniform distribution over L. Throws
/// InfeasibleError when L is empty.
Assumption2Profile assumption2_profile(const ProblemInstance& instance);

}  // namespace qsubset
