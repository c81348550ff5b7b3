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

// Figure data. Every distribution CSV has the header
//   index,phase_int,phase_turns,probability
// where index is the subset mask and phase_int the phase register. Rows are
// the support of the state in basis order.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qsubset/harness/commands.hpp"

namespace qsubset::harness {

struct DistributionRow {
  std::uint64_t index = 0;
  std::uint64_t phase_int = 0;
  double phase_turns = 0.0;
  double probability = 0.0;
};

/// Components with probability above 1e-20; the dropped mass is far below
/// any reported tolerance.
std::vector<DistributionRow> distribution_rows(const qsim::StateVectord& state);

std::string format_csv(std::span<const DistributionRow> rows);
/// Inverse of format_csv; ParseError on malformed lines.
std::vector<DistributionRow> parse_csv(std::string_view text);

/// Writes NN_<label>.csv per captured stage, eigenphases.csv,
/// histogram.csv and report.json into `dir` (created if needed). Returns
/// the report with distribution_files filled in. Throws IoError.
RunReport emit_trace(const SolveOutcome& outcome, const std::filesystem::path& dir);

std::string format_scaling_csv(std::span<const ScalingRow> rows);

/// Writes `text` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qsubset::harness
