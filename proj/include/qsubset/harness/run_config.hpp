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

// Instance files.
//
// Subset-sum:
//   {"values": [int...], "target": int, "precision_bits": int?, "seed": int?,
//    "policy": {"samples_per_round": int?, "aa_rounds_max": int?,
//               "revert_on_zero": bool?, "greedy_threshold": float?},
//    "exact_filter": bool?, "backend": "circuit"|"direct"?, "iterations": int?}
//
// Knapsack replaces "target"/"precision_bits" with "weights", "capacity",
// "weight_bits"? and "value_bits"?. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "qsubset/encoding.hpp"
#include "qsubset/knapsack.hpp"
#include "qsubset/maxfind.hpp"
#include "qsubset/pea.hpp"

namespace qsubset::harness {

struct RunConfig {
  /// The subset-sum instance; unused when `knapsack` is set.
  ProblemInstance problem;
  std::optional<KnapsackInstance> knapsack;
  std::uint64_t seed = 0;
  MaxFindPolicy policy;
  bool exact_filter = false;
  PeaBackend backend = PeaBackend::kCircuit;
  /// Overrides the planned filter iteration count.
  std::optional<int> iterations;

  bool is_knapsack() const { return knapsack.has_value(); }
  bool operator==(const RunConfig&) const = default;
};

/// ParseError on malformed JSON or wrong field types; InstanceError or
/// PrecisionError when the instance breaks its invariants.
RunConfig parse_instance(const nlohmann::json& doc);
RunConfig parse_instance_text(std::string_view text);
/// Adds IoError for unreadable files.
RunConfig parse_instance(const std::filesystem::path& path);

/// The echo written into reports; parse_instance reads it back unchanged.
nlohmann::json to_json(const RunConfig& config);

/// Smallest field widths that satisfy every knapsack invariant.
std::pair<int, int> auto_knapsack_bits(const std::vector<std::int64_t>& weights,
                                       const std::vector<std::int64_t>& values,
                                       std::int64_t capacity);

}  // namespace qsubset::harness
