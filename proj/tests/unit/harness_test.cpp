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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qsubset/errors.hpp"
#include "qsubset/filter.hpp"
#include "qsubset/harness/commands.hpp"
#include "qsubset/harness/run_config.hpp"
#include "qsubset/harness/run_report.hpp"
#include "qsubset/harness/trace_writer.hpp"
#include "qsubset/maxfind.hpp"
#include "qsubset/pea.hpp"

namespace qsubset::harness {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = QSUBSET_FIXTURE_DIR;

RunConfig fixture(const char* name) { return parse_instance(kFixtures / name); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  auto dir = fs::temp_directory_path() / "qsubset_harness_test" / name;
  fs::remove_all(dir);
  return dir;
}

double total(const std::vector<DistributionRow>& rows) {
  double s = 0.0;
  for (const auto& r : rows) s += r.probability;
  return s;
}

const StageSnapshot* find_stage(const SolveOutcome& out, std::string_view label) {
  for (const auto& s : out.stages) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

void check_round_trip(const RunReport& r) {
  const auto text = serialize(r);
  const auto back = deserialize_report(text);
  CHECK(back == r);
  CHECK(serialize(back) == text);
}

TEST_CASE("parse the reference instance") {
  const auto c = fixture("reference.json");
  CHECK(c.problem.values == std::vector<std::int64_t>{56, 54, 52, 48, 28, 12, 2});
  CHECK(c.problem.target == 102);
  CHECK(c.problem.precision_bits == 9);
  CHECK(c.exact_filter);
  CHECK(c.backend == PeaBackend::kCircuit);
  CHECK(c.policy == MaxFindPolicy{});
  CHECK(!c.is_knapsack());
  CHECK(parse_instance(to_json(c)) == c);
}

TEST_CASE("minimal instance picks the smallest precision") {
  const auto c = fixture("minimal.json");
  CHECK(c.problem.n() == 1);
  CHECK(c.problem.precision_bits == 2);
}

TEST_CASE("instance errors") {
  CHECK_THROWS_AS(parse_instance_text(R"({"values": [200, 200], "target": 100, "precision_bits": 9})"),
                  PrecisionError);
  CHECK_THROWS_AS(parse_instance_text(R"({"values": [1], "target": 2, "colour": 3})"), ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"values": [1], "target": )"), ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"values": "x", "target": 2})"), ParseError);
  CHECK_THROWS_AS(
      parse_instance_text(R"({"values": [1], "target": 2, "policy": {"samples_per_round": 0}})"),
      InstanceError);
  CHECK_THROWS_AS(parse_instance(kFixtures / "does_not_exist.json"), IoError);
}

TEST_CASE("knapsack instance parsing") {
  const auto c = fixture("knapsack_small.json");
  REQUIRE(c.is_knapsack());
  CHECK(c.knapsack->weights == std::vector<std::int64_t>{2, 3, 4});
  CHECK(c.knapsack->capacity == 6);
  CHECK(c.knapsack->weight_bits == 5);
  CHECK(c.knapsack->value_bits == 4);
  CHECK(parse_instance(to_json(c)) == c);

  const auto a = parse_instance_text(R"({"weights": [2, 3], "values": [1, 1], "capacity": 4})");
  const auto [mw, mv] = auto_knapsack_bits({2, 3}, {1, 1}, 4);
  CHECK(a.knapsack->weight_bits == mw);
  CHECK(a.knapsack->value_bits == mv);
}

TEST_CASE("reports round-trip for every command") {
  RunOptions quiet{false, false};
  const auto c = fixture("reference.json");
  check_round_trip(cmd_solve(c, SolveMode::kQuantum, quiet).report);
  check_round_trip(cmd_solve(c, SolveMode::kClassical).report);
  check_round_trip(cmd_solve(c, SolveMode::kDp).report);
  check_round_trip(cmd_assumptions(c));
  check_round_trip(cmd_compare(c, {5, true, false}));
  check_round_trip(cmd_knapsack(fixture("knapsack_small.json")).report);
  CHECK_THROWS_AS(deserialize_report("{\"command\": 3}"), ParseError);
}

TEST_CASE("solve answers the reference instance") {
  const auto r = cmd_solve(fixture("reference.json"), SolveMode::kQuantum).report;
  REQUIRE(r.answer);
  CHECK(r.answer->phi_int == 100);
  CHECK(r.answer->subset == "0011000");
  CHECK(r.counters == count_costs(1, r.counters.re_preparations));
  CHECK(cmd_solve(fixture("reference.json"), SolveMode::kDp).report.answer->phi_int == 100);
  const auto cl = cmd_solve(fixture("reference.json"), SolveMode::kClassical).report;
  CHECK(cl.classical->count_L == 41);
  CHECK(cl.classical->argmax_subsets == std::vector<std::string>{"0011000"});
}

TEST_CASE("cost accounting") {
  const auto c = count_costs(1, 4);
  CHECK(c.pea_applications == 3 + 4 * 2 * 3);
  CHECK(c.reflection_applications == 5);
  CHECK(c.re_preparations == 4);
  CHECK(c.marking_applications == 5);
}

TEST_CASE("traces are reproducible byte for byte") {
  const auto c = fixture("reference.json");
  const RunOptions opts{true, false};
  const auto a = scratch("a");
  const auto b = scratch("b");
  emit_trace(cmd_solve(c, SolveMode::kQuantum, opts), a);
  emit_trace(cmd_solve(c, SolveMode::kQuantum, opts), b);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    ++files;
  }
  CHECK(files >= 5);
  const auto report = deserialize_report(slurp(a / "report.json"));
  CHECK(!report.wall_time_seconds);
  for (const auto& f : report.distribution_files) CHECK(fs::exists(a / f.path));
}

TEST_CASE("trace distributions") {
  const auto out = cmd_solve(fixture("reference.json"), SolveMode::kQuantum, {true, false});
  for (const auto& s : out.stages) {
    CHECK_MESSAGE(total(distribution_rows(s.state)) == doctest::Approx(1.0).epsilon(1e-9), s.label);
  }

  const auto* pea = find_stage(out, "post-pea");
  REQUIRE(pea);
  const auto rows = distribution_rows(pea->state);
  CHECK(rows.size() == 128);
  for (const auto& r : rows) CHECK(std::abs(r.probability - 1.0 / 128) <= 1e-12);

  const auto* filt = find_stage(out, "post-filter");
  REQUIRE(filt);
  double below = 0.0;
  for (const auto& r : distribution_rows(filt->state)) {
    if (r.phase_int < 102) below += r.probability;
  }
  CHECK(below >= 0.99);

  const auto text = format_csv(rows);
  CHECK(text.rfind("index,phase_int,phase_turns,probability\n", 0) == 0);
  const auto parsed = parse_csv(text);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].index == rows[i].index);
    CHECK(parsed[i].phase_int == rows[i].phase_int);
    CHECK(parsed[i].probability == rows[i].probability);
  }
  CHECK_THROWS_AS(parse_csv("a,b\n"), ParseError);
}

TEST_CASE("raw filter follows the closed form") {
  auto c = fixture("reference_raw.json");
  const auto out = cmd_solve(c, SolveMode::kQuantum, {true, false});
  CHECK(out.report.filter->iterations_k == 1);
  const auto* filt = find_stage(out, "post-filter");
  REQUIRE(filt);
  double below = 0.0;
  for (const auto& r : distribution_rows(filt->state)) {
    if (r.phase_int < 102) below += r.probability;
  }
  CHECK(std::abs(below - 0.94623565673828125) <= 1e-9);
}

TEST_CASE("amplitude amplification on qubit 4 revives eliminated states") {
  // Raw filter, prefix fixed to phi_max's leading bits 001. The reflection
  // about psi2 feeds back mass the filter and the earlier collapses removed.
  const std::vector<std::int64_t> values{56, 54, 52, 48, 28, 12, 2};
  const PhaseOracle oracle(normalize_instance(values, 102, 9));
  const auto psi1 = run_pea(prepare_initial(9, 7), oracle, PeaBackend::kCircuit);
  const auto psi2 = run_filter(psi1, psi1, 102, 1, {false, 0}).state;
  const std::vector<int> prefix{0, 0, 1};
  const auto collapsed = collapse_prefix(psi2, prefix);
  const auto amplified = amplify_bit(collapsed, psi2, 3, prefix);

  auto above = [](const qsim::StateVectord& s) {
    double p = 0.0;
    for (const auto& r : distribution_rows(s)) {
      if (r.phase_int >= 102) p += r.probability;
    }
    return p;
  };
  double off_prefix = 0.0;
  for (const auto& r : distribution_rows(amplified)) {
    if ((r.phase_int >> 6) != 1) off_prefix += r.probability;
  }
  CHECK(prefix_mass(collapsed, prefix) == doctest::Approx(1.0));
  CHECK(off_prefix > 0.1);
  CHECK(above(amplified) > above(collapsed));
  CHECK(above(amplified) > 0.0);
  CHECK(above(amplified) < 0.2);

  // The exact filter leaves nothing at phase >= W to revive.
  const auto exact2 = run_filter(psi1, psi1, 102, 1, {true, 0}).state;
  CHECK(above(amplify_bit(collapse_prefix(exact2, prefix), exact2, 3, prefix)) < 1e-20);
}

TEST_CASE("compare flags strict disagreement") {
  auto c = fixture("reference.json");
  c.policy.greedy_threshold = 1e-9;
  const auto ok = cmd_compare(c, {5, false, false});
  REQUIRE(ok.compare);
  CHECK(ok.compare->strict);
  CHECK(ok.compare->agreements == 5);
  CHECK(!ok.compare->mismatch);

  const auto bad = cmd_compare(c, {3, false, true});
  CHECK(bad.compare->mismatch);
  CHECK(bad.compare->agreements == 0);

  // Sampling mode is never strict.
  const auto sampled = cmd_compare(fixture("reference.json"), {20, false, false});
  CHECK(!sampled.compare->strict);
  CHECK(!sampled.compare->mismatch);
  CHECK(sampled.compare->agreement_rate >= 0.6);
}

TEST_CASE("assumptions report") {
  const auto r = cmd_assumptions(fixture("reference.json"));
  REQUIRE(r.assumptions);
  CHECK(r.assumptions->count_L == 41);
  CHECK(r.assumptions->count_Lprime == 87);
  CHECK(r.assumptions->assumption1_ratio == doctest::Approx(87.0 / 41.0));
  CHECK(r.assumptions->phi_max_bits == std::vector<int>{0, 0, 1, 1, 0, 0, 1, 0, 0});
  CHECK(r.assumptions->min_conditional == doctest::Approx(4.0 / 23.0));
}

TEST_CASE("infeasible and misused commands") {
  const auto c = fixture("infeasible.json");
  CHECK_THROWS_AS(cmd_solve(c, SolveMode::kQuantum), InfeasibleError);
  CHECK_THROWS_AS(cmd_solve(c, SolveMode::kClassical), InfeasibleError);
  CHECK_THROWS_AS(cmd_solve(c, SolveMode::kDp), InfeasibleError);
  CHECK_THROWS_AS(cmd_compare(c), InfeasibleError);
  CHECK_THROWS_AS(cmd_solve(fixture("knapsack_small.json"), SolveMode::kQuantum), UsageError);
  CHECK_THROWS_AS(cmd_knapsack(fixture("reference.json")), UsageError);
  CHECK_THROWS_AS(parse_solve_mode("annealing"), UsageError);
}

TEST_CASE("knapsack command") {
  const auto r = cmd_knapsack(fixture("knapsack_small.json"), {false, false}).report;
  REQUIRE(r.knapsack);
  CHECK(r.knapsack->best_value == 7);
  CHECK(r.knapsack->brute_force_best == 7);
  CHECK(r.knapsack->weight_of_best < 6);
}

TEST_CASE("scaling report") {
  const auto rows = scaling_report(4, 7, 1);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.solved_exact_filter);
    CHECK(r.counters == count_costs(r.iterations_k, r.counters.re_preparations));
  }
  const auto csv = format_scaling_csv(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

}  // namespace
}  // namespace qsubset::harness
