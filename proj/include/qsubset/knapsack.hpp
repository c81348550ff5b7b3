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

// 0/1 knapsack on top of the subset-sum pipeline.
//
// Each item gets the packed phase integer weight * 2^m_v + value, so one
// phase register of m_w + m_v qubits holds (weight sum, value sum) with the
// weight field on top. The filter compares only the weight field against the
// capacity; max-finding then runs on the value field alone.

#include <cstdint>
#include <optional>
#include <vector>

#include "qsubset/encoding.hpp"
#include "qsubset/filter.hpp"
#include "qsubset/maxfind.hpp"
#include "qsubset/pea.hpp"

namespace qsubset {

/// Enumeration limit for brute_force_knapsack.
inline constexpr int kMaxKnapsackEnumeration = 20;

struct KnapsackInstance {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> values;
  std::int64_t capacity = 0;
  int weight_bits = 0;
  int value_bits = 0;

  int n() const { return static_cast<int>(weights.size()); }
  int phase_bits() const { return weight_bits + value_bits; }

  /// InstanceError on shape or sign problems, PrecisionError when a field
  /// would overflow or the packed total reaches half a turn.
  void validate() const;

  bool operator==(const KnapsackInstance&) const = default;
};

struct KnapsackEncoding {
  PhaseOracle oracle;
  /// The (phase, index) register the stages run on.
  qsim::RegisterLayout layout;
  /// Same qubits split as (weight, value, index).
  qsim::RegisterLayout field_layout;
  SearchField weight_field;
  SearchField value_field;
};

KnapsackEncoding encode_knapsack(const KnapsackInstance& instance);

struct KnapsackResult {
  bool feasible = false;
  std::int64_t best_value = 0;
  std::int64_t weight_of_best = 0;
  SubsetMask subset;
  /// Every optimal mask; filled by brute_force_knapsack only.
  std::vector<SubsetMask> argmax_masks;
  MaxFindTrace trace;
  FilterReport filter;
};

struct KnapsackOptions {
  bool exact_filter = false;
  PeaBackend backend = PeaBackend::kDirect;
  /// Overrides the planned Grover iteration count.
  std::optional<int> iterations;
  /// Also sees "post-pea" and "post-filter" before the max-finding states.
  MaxFindObserver observer;
};

/// Encode, phase estimation, weight filter, value max-finding. Throws
/// InfeasibleError when no subset fits.
KnapsackResult run_knapsack(const KnapsackInstance& instance, const MaxFindPolicy& policy,
                            std::uint64_t seed, const KnapsackOptions& options = {});

/// Exhaustive maximum of the value sum over masks with weight sum < capacity.
KnapsackResult brute_force_knapsack(const KnapsackInstance& instance);

}  // namespace qsubset
