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

// qsubset: command-line front end.
//
// Exit codes: 0 ok, 1 I/O or unexpected failure, 2 infeasible (L empty),
// 3 parse/instance/usage error, 4 oracle mismatch in exact mode.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsubset/errors.hpp"
#include "qsubset/harness/commands.hpp"
#include "qsubset/harness/run_config.hpp"
#include "qsubset/harness/trace_writer.hpp"

using namespace qsubset;
using namespace qsubset::harness;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInfeasible = 2,
  kBadInput = 3,
  kMismatch = 4,
};

// Flags that mirror the instance schema and override it.
struct Overrides {
  std::uint64_t seed = 0;
  int samples = 0;
  int aa_rounds = 0;
  bool no_revert = false;
  double greedy = 0.0;
  bool exact_filter = false;
  std::string backend;
  int iterations = 0;
  int precision_bits = 0;
  std::int64_t target = 0;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* aa_opt = nullptr;
  CLI::Option* greedy_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* precision_opt = nullptr;
  CLI::Option* target_opt = nullptr;

  void attach(CLI::App* app) {
    seed_opt = app->add_option("--seed", seed, "RNG seed");
    samples_opt = app->add_option("--samples", samples, "samples per round");
    aa_opt = app->add_option("--aa-rounds", aa_rounds, "AA rounds per qubit");
    app->add_flag("--no-revert", no_revert, "keep the amplified state when a qubit is set to 0");
    greedy_opt = app->add_option("--greedy", greedy, "greedy threshold (disables sampling)");
    app->add_flag("--exact-filter", exact_filter, "project out phases >= W after filtering");
    app->add_option("--backend", backend, "circuit or direct");
    iterations_opt = app->add_option("--iterations", iterations, "filter iteration count");
    precision_opt = app->add_option("--precision-bits", precision_bits, "phase register width");
    target_opt = app->add_option("--target", target, "subset-sum target W");
  }

  void apply(RunConfig& config) const {
    if (*seed_opt) config.seed = seed;
    if (*samples_opt) config.policy.samples_per_round = samples;
    if (*aa_opt) config.policy.aa_rounds_max = aa_rounds;
    if (no_revert) config.policy.revert_on_zero = false;
    if (*greedy_opt) config.policy.greedy_threshold = greedy;
    if (exact_filter) config.exact_filter = true;
    if (!backend.empty()) config.backend = parse_pea_backend(backend);
    if (*iterations_opt) config.iterations = iterations;
    if (*precision_opt || *target_opt) {
      if (config.is_knapsack()) throw UsageError("--target/--precision-bits apply to subset-sum");
      const auto w = *target_opt ? target : config.problem.target;
      const std::optional<int> m =
          *precision_opt ? std::optional<int>(precision_bits) : std::nullopt;
      config.problem = normalize_instance(config.problem.values, w, m);
    }
    try {
      config.policy.validate();
    } catch (const UsageError& e) {
      throw InstanceError(e.what());
    }
  }
};

struct Output {
  std::string report_path;
  bool json = false;
  bool no_timing = false;

  void attach(CLI::App* app) {
    app->add_option("--report", report_path, "write the JSON run report here");
    app->add_flag("--json", json, "print the JSON run report to stdout");
    app->add_flag("--no-timing", no_timing, "omit wall time so reports are reproducible");
  }

  void emit(const RunReport& report) const {
    if (!report_path.empty()) write_file(report_path, serialize(report));
    if (json) std::cout << serialize(report);
  }
};

RunConfig load(const std::string& path, const Overrides& o) {
  auto config = parse_instance(std::filesystem::path(path));
  o.apply(config);
  return config;
}

void print_answer(const RunReport& r) {
  const auto& a = *r.answer;
  const int m = r.config.problem.precision_bits;
  std::printf("phi = %llu/%llu = %.17g", static_cast<unsigned long long>(a.phi_int),
              1ULL << m, a.phi_turns);
  if (!a.subset.empty()) std::printf("  subset %s", a.subset.c_str());
  std::printf("  (%s", r.mode.c_str());
  if (r.mode == "quantum") std::printf(", seed %llu", static_cast<unsigned long long>(r.seed));
  std::printf(")\n");
  if (r.filter) {
    std::printf("filter: |L| = %llu, |L'| = %llu, k = %d, good probability %.4f -> %.4f%s\n",
                static_cast<unsigned long long>(r.filter->count_L),
                static_cast<unsigned long long>(r.filter->count_Lprime), r.filter->iterations_k,
                r.filter->good_probability_before, r.filter->good_probability_after,
                r.filter->projected ? " (projected)" : "");
  }
  if (r.maxfind) {
    for (const auto& q : r.maxfind->trace.qubits) {
      std::printf("  qubit-%d  P(1) %.4f", q.qubit + 1, q.probability_one_initial);
      if (q.aa_rounds_applied > 0) {
        std::printf(" -> %.4f after %d AA", q.probability_one_after_aa, q.aa_rounds_applied);
      }
      std::printf("  draws %d  bit %d\n", q.samples_drawn, q.decided_bit);
    }
    std::printf("counters: PEA %llu, reflections %llu, re-preparations %llu\n",
                static_cast<unsigned long long>(r.counters.pea_applications),
                static_cast<unsigned long long>(r.counters.reflection_applications),
                static_cast<unsigned long long>(r.counters.re_preparations));
  }
}

void print_compare(const RunReport& r) {
  const auto& c = *r.compare;
  std::printf("phi_max = %llu  agreement %d/%d (%.3f)%s\n",
              static_cast<unsigned long long>(c.phi_max_int), c.agreements, c.trials,
              c.agreement_rate, c.strict ? "  [exact-filter greedy]" : "");
  std::printf("  t  profile p_t        runs  mean P(1)  after AA  draws  ones  mean draw p\n");
  for (const auto& b : c.bits) {
    char profile[32] = "-";
    if (b.profile) {
      std::snprintf(profile, sizeof profile, "%llu/%llu",
                    static_cast<unsigned long long>(b.profile->ones),
                    static_cast<unsigned long long>(b.profile->matching));
    }
    std::printf("  %-2d %-18s %5d  %9.4f  %8.4f  %5d  %4d  %11.4f\n", b.t, profile,
                b.on_path_runs, b.mean_probability_one_initial, b.mean_probability_one_after_aa,
                b.draws, b.draws_one, b.mean_draw_probability);
  }
}

void print_assumptions(const RunReport& r) {
  const auto& a = *r.assumptions;
  std::printf("|L| = %llu  |L'| = %llu  |L'|/|L| = %.6f\n",
              static_cast<unsigned long long>(a.count_L),
              static_cast<unsigned long long>(a.count_Lprime), a.assumption1_ratio);
  std::printf("phi_max bits:");
  for (int b : a.phi_max_bits) std::printf(" %d", b);
  std::printf("\n");
  for (const auto& c : a.conditionals) {
    if (!c) continue;
    std::printf("  t=%d  p = %llu/%llu = %.4f\n", c->t, static_cast<unsigned long long>(c->ones),
                static_cast<unsigned long long>(c->matching), c->probability());
  }
  std::printf("min conditional over set bits: %.4f\n", a.min_conditional);
}

int run(int argc, char** argv) {
  CLI::App app{"Subset-sum and knapsack by phase estimation and amplitude amplification"};
  app.require_subcommand(1);

  std::string instance;
  std::string mode = "quantum";
  std::string trace_dir;
  int trials = 100;
  bool corrupt = false;
  std::string scaling;
  std::string out_dir;

  Overrides solve_o, compare_o, assumptions_o, knapsack_o, trace_o;
  Output solve_out, compare_out, assumptions_out, knapsack_out;
  bool trace_no_timing = false;

  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("instance", instance, "instance JSON")->required();
  solve->add_option("--mode", mode, "quantum, classical or dp");
  solve->add_option("--trace-dir", trace_dir, "also write stage CSVs here");
  solve_o.attach(solve);
  solve_out.attach(solve);

  auto* compare = app.add_subcommand("compare", "quantum runs over seeds against brute force");
  compare->add_option("instance", instance, "instance JSON")->required();
  compare->add_option("--trials", trials, "number of seeds");
  compare->add_flag("--test-corrupt-maxfind", corrupt)->group("");
  compare_o.attach(compare);
  compare_out.attach(compare);

  auto* assumptions = app.add_subcommand("assumptions", "profile the counting assumptions");
  assumptions->add_option("instance", instance, "instance JSON")->required();
  assumptions_o.attach(assumptions);
  assumptions_out.attach(assumptions);

  auto* knapsack = app.add_subcommand("knapsack", "0/1 knapsack over packed phase fields");
  knapsack->add_option("instance", instance, "knapsack instance JSON")->required();
  knapsack->add_option("--trace-dir", trace_dir, "also write stage CSVs here");
  knapsack_o.attach(knapsack);
  knapsack_out.attach(knapsack);

  auto* trace = app.add_subcommand("trace", "write per-stage distributions or a scaling table");
  trace->add_option("instance", instance, "instance JSON");
  trace->add_option("--out", out_dir, "output directory")->required();
  trace->add_option("--scaling", scaling, "FROM:TO element counts for the cost table");
  trace->add_flag("--no-timing", trace_no_timing, "omit wall time from report.json");
  trace_o.attach(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (*solve) {
    const auto config = load(instance, solve_o);
    RunOptions opts{!trace_dir.empty(), !solve_out.no_timing};
    auto outcome = cmd_solve(config, parse_solve_mode(mode), opts);
    if (!trace_dir.empty()) outcome.report = emit_trace(outcome, trace_dir);
    if (!solve_out.json) print_answer(outcome.report);
    solve_out.emit(outcome.report);
    return kOk;
  }
  if (*compare) {
    const auto config = load(instance, compare_o);
    const auto report = cmd_compare(config, {trials, !compare_out.no_timing, corrupt});
    if (!compare_out.json) print_compare(report);
    compare_out.emit(report);
    if (report.compare->mismatch) {
      std::fprintf(stderr, "oracle mismatch: exact-filter greedy run disagreed with brute force\n");
      return kMismatch;
    }
    return kOk;
  }
  if (*assumptions) {
    const auto config = load(instance, assumptions_o);
    const auto report = cmd_assumptions(config, {false, !assumptions_out.no_timing});
    if (!assumptions_out.json) print_assumptions(report);
    assumptions_out.emit(report);
    return kOk;
  }
  if (*knapsack) {
    const auto config = load(instance, knapsack_o);
    RunOptions opts{!trace_dir.empty(), !knapsack_out.no_timing};
    auto outcome = cmd_knapsack(config, opts);
    if (!trace_dir.empty()) outcome.report = emit_trace(outcome, trace_dir);
    const auto& k = *outcome.report.knapsack;
    if (!knapsack_out.json) {
      std::printf("best value %lld  weight %lld  subset %s", static_cast<long long>(k.best_value),
                static_cast<long long>(k.weight_of_best), k.subset.c_str());
      if (k.brute_force_best) {
        std::printf("  (brute force %lld)", static_cast<long long>(*k.brute_force_best));
      }
      std::printf("\n");
    }
    knapsack_out.emit(outcome.report);
    return kOk;
  }
  if (*trace) {
    if (!scaling.empty()) {
      int from = 0;
      int to = 0;
      if (std::sscanf(scaling.c_str(), "%d:%d", &from, &to) != 2) {
        throw UsageError("--scaling expects FROM:TO");
      }
      const auto rows = scaling_report(from, to, trace_o.seed);
      std::filesystem::create_directories(out_dir);
      const auto text = format_scaling_csv(rows);
      write_file(std::filesystem::path(out_dir) / "scaling.csv", text);
      std::cout << text;
      return kOk;
    }
    if (instance.empty()) throw UsageError("trace needs an instance file or --scaling");
    const auto config = load(instance, trace_o);
    RunOptions opts{true, !trace_no_timing};
    auto outcome = config.is_knapsack() ? cmd_knapsack(config, opts)
                                        : cmd_solve(config, SolveMode::kQuantum, opts);
    const auto report = emit_trace(outcome, out_dir);
    for (const auto& f : report.distribution_files) {
      std::printf("%s\n", (std::filesystem::path(out_dir) / f.path).c_str());
    }
    return kOk;
  }
  return kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const OracleMismatchError& e) {
    std::fprintf(stderr, "oracle mismatch: %s\n", e.what());
    return kMismatch;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kBadInput;
  } catch (const InstanceError& e) {
    std::fprintf(stderr, "instance error: %s\n", e.what());
    return kBadInput;
  } catch (const PrecisionError& e) {
    std::fprintf(stderr, "instance error: %s\n", e.what());
    return kBadInput;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "instance error: %s\n", e.what());
    return kBadInput;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}
