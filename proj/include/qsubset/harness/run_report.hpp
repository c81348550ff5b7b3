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

// The JSON run report. from_json(to_json(r)) == r for every report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsubset/classical.hpp"
#include "qsubset/filter.hpp"
#include "qsubset/harness/run_config.hpp"
#include "qsubset/maxfind.hpp"

namespace qsubset::harness {

/// Oracle-call accounting in the units of the cost analysis: one PEA
/// application is one run of U_pea (or its inverse).
struct CostCounters {
  std::uint64_t pea_applications = 0;
  /// Reflections about psi1 (filter) and psi2 (max-finding).
  std::uint64_t reflection_applications = 0;
  /// U_1 / U_1^* pairs spent on reflecting about psi2.
  std::uint64_t re_preparations = 0;
  /// F_phi plus Zhat applications.
  std::uint64_t marking_applications = 0;

  bool operator==(const CostCounters&) const = default;
};

/// Counters for one subset-sum pipeline run with k filter iterations and
/// `aa_rounds` max-finding rounds in total.
CostCounters count_costs(int k, int aa_rounds);

struct Answer {
  std::uint64_t phi_int = 0;
  double phi_turns = 0.0;
  std::string subset;  ///< render_mask form, element 0 leftmost
  bool operator==(const Answer&) const = default;
};

struct ClassicalSummary {
  bool feasible = false;
  std::uint64_t phi_max_int = 0;
  std::vector<std::string> argmax_subsets;
  std::uint64_t count_L = 0;
  std::uint64_t count_Lprime = 0;
  bool operator==(const ClassicalSummary&) const = default;
};

struct KnapsackSummary {
  std::int64_t best_value = 0;
  std::int64_t weight_of_best = 0;
  std::string subset;
  /// Brute-force optimum, when the run was checked against it.
  std::optional<std::int64_t> brute_force_best;
  bool operator==(const KnapsackSummary&) const = default;
};

struct AssumptionsSummary {
  std::uint64_t count_L = 0;
  std::uint64_t count_Lprime = 0;
  double assumption1_ratio = 0.0;
  std::vector<int> phi_max_bits;
  std::vector<std::optional<BitConditional>> conditionals;
  double min_conditional = 1.0;
  bool operator==(const AssumptionsSummary&) const = default;
};

/// One phase qubit: the uniform-over-L profile next to what the runs saw.
struct BitComparison {
  int t = 0;
  std::optional<BitConditional> profile;
  /// Runs whose decided prefix matched phi_max on bits 0..t-1.
  int on_path_runs = 0;
  double mean_probability_one_initial = 0.0;
  double mean_probability_one_after_aa = 0.0;
  /// All draws on this qubit across runs, and how many came up 1.
  int draws = 0;
  int draws_one = 0;
  double mean_draw_probability = 0.0;
  bool operator==(const BitComparison&) const = default;
};

struct CompareSummary {
  int trials = 0;
  int agreements = 0;
  double agreement_rate = 0.0;
  /// Exact-filter greedy runs must agree on every trial.
  bool strict = false;
  bool mismatch = false;
  std::uint64_t phi_max_int = 0;
  /// Answer of each trial, seed order.
  std::vector<std::uint64_t> answers;
  std::vector<BitComparison> bits;
  bool operator==(const CompareSummary&) const = default;
};

struct StageFile {
  std::string label;
  std::string path;
  bool operator==(const StageFile&) const = default;
};

struct RunReport {
  std::string command;
  std::string mode;
  RunConfig config;
  std::uint64_t seed = 0;
  std::optional<FilterReport> filter;
  std::optional<MaxFindResult> maxfind;
  std::optional<Answer> answer;
  std::optional<ClassicalSummary> classical;
  std::optional<KnapsackSummary> knapsack;
  std::optional<AssumptionsSummary> assumptions;
  std::optional<CompareSummary> compare;
  std::vector<StageFile> distribution_files;
  /// Absent when timing is switched off for byte-identical output.
  std::optional<double> wall_time_seconds;
  CostCounters counters;

  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& report);
/// ParseError on missing or mistyped fields.
RunReport report_from_json(const nlohmann::json& doc);

/// Two-space indented JSON with a trailing newline.
std::string serialize(const RunReport& report);
RunReport deserialize_report(std::string_view text);

}  // namespace qsubset::harness
