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

#include "qsubset/harness/trace_writer.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsubset/errors.hpp"
#include "qsubset/pea.hpp"

namespace qsubset::harness {

namespace {

constexpr double kDropBelow = 1e-20;
constexpr const char* kHeader = "index,phase_int,phase_turns,probability\n";

void append_row(std::string& out, const DistributionRow& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRIu64 ",%.17g,%.17g\n", r.index, r.phase_int,
                r.phase_turns, r.probability);
  out += buf;
}

std::string file_stem(std::string_view label) {
  std::string s(label);
  for (char& c : s) {
    if (c == '-') c = '_';
  }
  return s;
}

}  // namespace

std::vector<DistributionRow> distribution_rows(const qsim::StateVectord& state) {
  const auto& layout = state.layout();
  const int m = layout.segment(kPhaseSegment).num_qubits;
  std::vector<DistributionRow> rows;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    if (p <= kDropBelow) continue;
    const auto basis = static_cast<std::uint64_t>(i);
    const auto phase = layout.extract(basis, kPhaseSegment);
    rows.push_back({layout.extract(basis, kIndexSegment), phase,
                    std::ldexp(static_cast<double>(phase), -m), p});
  }
  return rows;
}

std::string format_csv(std::span<const DistributionRow> rows) {
  std::string out = kHeader;
  for (const auto& r : rows) append_row(out, r);
  return out;
}

std::vector<DistributionRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line + "\n" != kHeader) throw ParseError("unexpected CSV header");
  std::vector<DistributionRow> rows;
  while (std::getline(in, line)) {
    DistributionRow r;
    if (std::sscanf(line.c_str(), "%" SCNu64 ",%" SCNu64 ",%lf,%lf", &r.index, &r.phase_int,
                    &r.phase_turns, &r.probability) != 4) {
      throw ParseError("malformed CSV row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

RunReport emit_trace(const SolveOutcome& outcome, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create trace directory " + dir.string());
  }
  RunReport report = outcome.report;
  report.distribution_files.clear();

  for (std::size_t s = 0; s < outcome.stages.size(); ++s) {
    const auto& stage = outcome.stages[s];
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02zu_", s);
    const std::string name = prefix + file_stem(stage.label) + ".csv";
    write_file(dir / name, format_csv(distribution_rows(stage.state)));
    report.distribution_files.push_back({stage.label, name});
  }

  if (!outcome.eigenphases.empty()) {
    const int m = outcome.phase_bits;
    const double share = 1.0 / static_cast<double>(outcome.eigenphases.size());
    std::vector<DistributionRow> rows;
    for (std::size_t j = 0; j < outcome.eigenphases.size(); ++j) {
      const auto phase = outcome.eigenphases[j];
      rows.push_back({j, phase, std::ldexp(static_cast<double>(phase), -m), share});
    }
    write_file(dir / "eigenphases.csv", format_csv(rows));
    report.distribution_files.push_back({"eigenphases", "eigenphases.csv"});

    // 32 equal bins over the half turn [0, 2^(m-1)); index is the bin number
    // and phase_int its lower edge.
    const int bin_bits = std::max(0, m - 1 - 5);
    const std::uint64_t bins = std::uint64_t{1} << (m - 1 - bin_bits);
    std::vector<double> mass(bins, 0.0);
    for (auto phase : outcome.eigenphases) mass[std::min(bins - 1, phase >> bin_bits)] += share;
    rows.clear();
    for (std::uint64_t b = 0; b < bins; ++b) {
      const auto lower = b << bin_bits;
      rows.push_back({b, lower, std::ldexp(static_cast<double>(lower), -m), mass[b]});
    }
    write_file(dir / "histogram.csv", format_csv(rows));
    report.distribution_files.push_back({"histogram", "histogram.csv"});
  }

  write_file(dir / "report.json", serialize(report));
  return report;
}

std::string format_scaling_csv(std::span<const ScalingRow> rows) {
  std::string out =
      "n,m,qubits,count_L,iterations_k,pea_applications,reflection_applications,"
      "re_preparations,marking_applications,solved,solved_exact_filter,wall_time_seconds\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%d,%d,%d,%" PRIu64 ",%d,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                  ",%d,%d,%.6f\n",
                  r.n, r.m, 2 * r.m + r.n, r.count_L, r.iterations_k, r.counters.pea_applications,
                  r.counters.reflection_applications, r.counters.re_preparations,
                  r.counters.marking_applications, r.solved ? 1 : 0, r.solved_exact_filter ? 1 : 0,
                  r.wall_time_seconds);
    out += buf;
  }
  return out;
}

}  // namespace qsubset::harness
