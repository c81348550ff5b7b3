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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsubset/harness/run_config.hpp"
#include "qsubset/harness/run_report.hpp"
#include "qsubset/qsim/state_vector.hpp"

namespace qsubset::harness {

enum class SolveMode { kQuantum, kClassical, kDp };

std::string_view to_string(SolveMode mode);
/// Throws UsageError on anything but quantum, classical or dp.
SolveMode parse_solve_mode(std::string_view text);

struct RunOptions {
  /// Keep a copy of the state after every stage for emit_trace.
  bool capture_stages = false;
  /// Off leaves wall_time_seconds empty so reports are byte-reproducible.
  bool record_time = true;
};

struct StageSnapshot {
  std::string label;
  qsim::StateVectord state;
};

struct SolveOutcome {
  RunReport report;
  std::vector<StageSnapshot> stages;
  /// Phase integer of every mask (empty for classical modes).
  std::vector<std::uint64_t> eigenphases;
  int phase_bits = 0;
};

/// Quantum mode runs encode, PEA, filter and max-finding. Throws
/// InfeasibleError when L is empty.
SolveOutcome cmd_solve(const RunConfig& config, SolveMode mode, const RunOptions& options = {});

/// Knapsack pipeline, checked against brute force when the item count allows.
SolveOutcome cmd_knapsack(const RunConfig& config, const RunOptions& options = {});

struct CompareOptions {
  int trials = 100;
  bool record_time = true;
  /// Test hook: perturbs every quantum answer by one unit.
  bool corrupt_maxfind = false;
};

/// Quantum runs on seeds seed, seed + 1, ... against brute force. The
/// report's compare.mismatch is set when an exact-filter greedy run
/// disagrees.
RunReport cmd_compare(const RunConfig& config, const CompareOptions& options = {});

RunReport cmd_assumptions(const RunConfig& config, const RunOptions& options = {});

struct ScalingRow {
  int n = 0;
  int m = 0;
  std::uint64_t count_L = 0;
  int iterations_k = 0;
  CostCounters counters;
  /// Whether the raw pipeline returned phi_max.
  bool solved = false;
  /// The same seed with the exact-filter projection.
  bool solved_exact_filter = false;
  double wall_time_seconds = 0.0;
};

/// One random instance per n (target half the total) under the default
/// policy, recording how the counters grow. Counters and time come from the
/// raw run.
std::vector<ScalingRow> scaling_report(int n_from, int n_to, std::uint64_t seed,
                                       PeaBackend backend = PeaBackend::kDirect);

}  // namespace qsubset::harness
