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

#include "qsubset/harness/commands.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "qsubset/classical.hpp"
#include "qsubset/errors.hpp"
#include "qsubset/filter.hpp"
#include "qsubset/knapsack.hpp"
#include "qsubset/maxfind.hpp"
#include "qsubset/pea.hpp"

namespace qsubset::harness {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(Clock::now()) {}
  std::optional<double> seconds() const {
    if (!enabled_) return std::nullopt;
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  bool enabled_;
  Clock::time_point start_;
};

struct QuantumRun {
  FilterReport filter;
  MaxFindResult maxfind;
};

QuantumRun run_quantum(const RunConfig& config, const MaxFindObserver& observer) {
  const auto& inst = config.problem;
  const PhaseOracle oracle(inst);
  const auto target = static_cast<std::uint64_t>(inst.target);
  const auto psi1 = run_pea(prepare_initial(inst.precision_bits, inst.n()), oracle, config.backend);
  if (observer) observer("post-pea", psi1);
  const int k = plan_iterations(count_feasible(psi1, target), std::uint64_t{1} << inst.n(),
                                config.iterations);
  auto filtered = run_filter(psi1, psi1, target, k, {config.exact_filter, 0});
  if (observer) observer("post-filter", filtered.state);
  MaxFindOptions options;
  options.observer = observer;
  auto found = run_maxfind(filtered.state, config.policy, config.seed, options);
  return {filtered.report, std::move(found)};
}

int total_aa_rounds(const MaxFindTrace& trace) {
  int rounds = 0;
  for (const auto& q : trace.qubits) rounds += q.aa_rounds_applied;
  return rounds;
}

Answer make_answer(std::uint64_t phi_int, SubsetMask mask, const ProblemInstance& inst) {
  return {phi_int, std::ldexp(static_cast<double>(phi_int), -inst.precision_bits),
          render_mask(mask, inst.n())};
}

ClassicalSummary summarize(const OracleReport& r, int n) {
  ClassicalSummary c{r.feasible, r.phi_max_int, {}, r.count_L, r.count_Lprime};
  for (const auto mask : r.argmax_masks) c.argmax_subsets.push_back(render_mask(mask, n));
  return c;
}

void require_subset_sum(const RunConfig& config, const char* command) {
  if (config.is_knapsack()) {
    throw UsageError(std::string(command) + " takes a subset-sum instance; use knapsack");
  }
}

MaxFindObserver capture_into(std::vector<StageSnapshot>& stages, bool enabled) {
  if (!enabled) return {};
  return [&stages](std::string_view label, const qsim::StateVectord& s) {
    stages.push_back({std::string(label), s});
  };
}

}  // namespace

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kQuantum: return "quantum";
    case SolveMode::kClassical: return "classical";
    case SolveMode::kDp: return "dp";
  }
  return "?";
}

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "quantum") return SolveMode::kQuantum;
  if (text == "classical") return SolveMode::kClassical;
  if (text == "dp") return SolveMode::kDp;
  throw UsageError("unknown mode \"" + std::string(text) + "\" (quantum, classical, dp)");
}

SolveOutcome cmd_solve(const RunConfig& config, SolveMode mode, const RunOptions& options) {
  require_subset_sum(config, "solve");
  const Stopwatch clock(options.record_time);
  const auto& inst = config.problem;
  SolveOutcome out;
  auto& report = out.report;
  report.command = "solve";
  report.mode = std::string(to_string(mode));
  report.config = config;
  report.seed = config.seed;
  out.phase_bits = inst.precision_bits;

  switch (mode) {
    case SolveMode::kQuantum: {
      const PhaseOracle oracle(inst);
      out.eigenphases.assign(oracle.eigenphases().begin(), oracle.eigenphases().end());
      auto run = run_quantum(config, capture_into(out.stages, options.capture_stages));
      report.answer = make_answer(run.maxfind.phi_int, run.maxfind.subset, inst);
      report.counters = count_costs(run.filter.iterations_k, total_aa_rounds(run.maxfind.trace));
      report.filter = run.filter;
      report.maxfind = std::move(run.maxfind);
      break;
    }
    case SolveMode::kClassical: {
      const auto r = brute_force(inst);
      if (!r.feasible) throw InfeasibleError("L is empty: no subset sums below the target");
      report.classical = summarize(r, inst.n());
      report.answer = make_answer(r.phi_max_int, r.argmax_masks.front(), inst);
      break;
    }
    case SolveMode::kDp: {
      const auto best = dp_solve(inst);
      report.answer = Answer{best, std::ldexp(static_cast<double>(best), -inst.precision_bits), ""};
      break;
    }
  }
  report.wall_time_seconds = clock.seconds();
  return out;
}

SolveOutcome cmd_knapsack(const RunConfig& config, const RunOptions& options) {
  if (!config.is_knapsack()) throw UsageError("knapsack needs an instance with weights");
  const Stopwatch clock(options.record_time);
  const auto& inst = *config.knapsack;
  SolveOutcome out;
  out.phase_bits = inst.phase_bits();
  const auto enc = encode_knapsack(inst);
  out.eigenphases.assign(enc.oracle.eigenphases().begin(), enc.oracle.eigenphases().end());

  KnapsackOptions ko;
  ko.exact_filter = config.exact_filter;
  ko.backend = config.backend;
  ko.iterations = config.iterations;
  ko.observer = capture_into(out.stages, options.capture_stages);
  const auto result = run_knapsack(inst, config.policy, config.seed, ko);

  auto& report = out.report;
  report.command = "knapsack";
  report.mode = "quantum";
  report.config = config;
  report.seed = config.seed;
  report.filter = result.filter;
  report.knapsack = KnapsackSummary{result.best_value, result.weight_of_best,
                                    render_mask(result.subset, inst.n()), std::nullopt};
  if (inst.n() <= kMaxKnapsackEnumeration) {
    report.knapsack->brute_force_best = brute_force_knapsack(inst).best_value;
  }
  MaxFindResult mf;
  mf.phi_int = static_cast<std::uint64_t>(result.best_value);
  mf.subset = result.subset;
  mf.trace = result.trace;
  mf.exact = true;
  report.maxfind = std::move(mf);
  report.counters = count_costs(result.filter.iterations_k, total_aa_rounds(result.trace));
  report.wall_time_seconds = clock.seconds();
  return out;
}

RunReport cmd_compare(const RunConfig& config, const CompareOptions& options) {
  require_subset_sum(config, "compare");
  if (options.trials < 1) throw UsageError("compare needs at least one trial");
  const Stopwatch clock(options.record_time);
  const auto& inst = config.problem;
  const auto oracle = brute_force(inst);
  if (!oracle.feasible) throw InfeasibleError("L is empty: no subset sums below the target");
  const auto profile = assumption2_profile(inst);
  const int m = inst.precision_bits;

  RunReport report;
  report.command = "compare";
  report.mode = "quantum";
  report.config = config;
  report.seed = config.seed;
  report.classical = summarize(oracle, inst.n());

  CompareSummary cmp;
  cmp.trials = options.trials;
  cmp.strict = config.exact_filter && config.policy.greedy();
  cmp.phi_max_int = oracle.phi_max_int;
  cmp.bits.resize(static_cast<std::size_t>(m));
  std::vector<double> draw_prob_sum(static_cast<std::size_t>(m), 0.0);
  for (int t = 0; t < m; ++t) {
    cmp.bits[t].t = t;
    cmp.bits[t].profile = profile.conditionals[t];
  }

  CostCounters total;
  for (int i = 0; i < options.trials; ++i) {
    RunConfig trial = config;
    trial.seed = config.seed + static_cast<std::uint64_t>(i);
    auto run = run_quantum(trial, {});
    std::uint64_t answer = run.maxfind.phi_int;
    if (options.corrupt_maxfind) answer ^= 1;
    cmp.answers.push_back(answer);
    cmp.agreements += answer == oracle.phi_max_int;

    bool on_path = true;
    for (int t = 0; t < m; ++t) {
      const auto& q = run.maxfind.trace.qubits[t];
      auto& b = cmp.bits[t];
      if (on_path) {
        ++b.on_path_runs;
        b.mean_probability_one_initial += q.probability_one_initial;
        b.mean_probability_one_after_aa += q.probability_one_after_aa;
      }
      for (const auto& d : q.draws) {
        ++b.draws;
        b.draws_one += d.outcome;
        draw_prob_sum[t] += d.probability;
      }
      on_path = on_path && q.decided_bit == profile.phi_max_bits[t];
    }
    const auto c = count_costs(run.filter.iterations_k, total_aa_rounds(run.maxfind.trace));
    total.pea_applications += c.pea_applications;
    total.reflection_applications += c.reflection_applications;
    total.re_preparations += c.re_preparations;
    total.marking_applications += c.marking_applications;
    if (i == 0) report.filter = run.filter;
  }
  for (int t = 0; t < m; ++t) {
    auto& b = cmp.bits[t];
    if (b.on_path_runs > 0) {
      b.mean_probability_one_initial /= b.on_path_runs;
      b.mean_probability_one_after_aa /= b.on_path_runs;
    }
    if (b.draws > 0) b.mean_draw_probability = draw_prob_sum[t] / b.draws;
  }
  cmp.agreement_rate = double(cmp.agreements) / cmp.trials;
  cmp.mismatch = cmp.strict && cmp.agreements != cmp.trials;
  report.compare = std::move(cmp);
  report.counters = total;
  report.wall_time_seconds = clock.seconds();
  return report;
}

RunReport cmd_assumptions(const RunConfig& config, const RunOptions& options) {
  require_subset_sum(config, "assumptions");
  const Stopwatch clock(options.record_time);
  const auto& inst = config.problem;
  const auto oracle = brute_force(inst);
  const auto profile = assumption2_profile(inst);

  RunReport report;
  report.command = "assumptions";
  report.mode = "classical";
  report.config = config;
  report.seed = config.seed;
  report.classical = summarize(oracle, inst.n());
  report.assumptions = AssumptionsSummary{oracle.count_L,        oracle.count_Lprime,
                                          assumption1_ratio(oracle), profile.phi_max_bits,
                                          profile.conditionals,  profile.min_conditional};
  report.wall_time_seconds = clock.seconds();
  return report;
}

std::vector<ScalingRow> scaling_report(int n_from, int n_to, std::uint64_t seed,
                                       PeaBackend backend) {
  if (n_from < 1 || n_to < n_from) throw UsageError("scaling range must satisfy 1 <= from <= to");
  std::mt19937_64 rng(seed);
  std::vector<ScalingRow> rows;
  for (int n = n_from; n <= n_to; ++n) {
    std::uniform_int_distribution<std::int64_t> pick(1, 2 * n);
    std::vector<std::int64_t> values(static_cast<std::size_t>(n));
    std::int64_t total = 0;
    for (auto& v : values) total += (v = pick(rng));

    RunConfig config;
    config.problem = normalize_instance(values, std::max<std::int64_t>(1, total / 2));
    config.seed = seed;
    config.backend = backend;
    const Stopwatch clock(true);
    const auto run = run_quantum(config, {});

    ScalingRow row;
    row.n = n;
    row.m = config.problem.precision_bits;
    row.count_L = run.filter.count_L;
    row.iterations_k = run.filter.iterations_k;
    row.counters = count_costs(run.filter.iterations_k, total_aa_rounds(run.maxfind.trace));
    row.wall_time_seconds = *clock.seconds();
    const auto phi_max = brute_force(config.problem).phi_max_int;
    row.solved = run.maxfind.phi_int == phi_max;
    config.exact_filter = true;
    row.solved_exact_filter = run_quantum(config, {}).maxfind.phi_int == phi_max;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsubset::harness
