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

#include "qsubset/harness/run_report.hpp"

#include <string>

#include "qsubset/errors.hpp"

namespace qsubset::harness {

using nlohmann::json;

CostCounters count_costs(int k, int aa_rounds) {
  // U_1 = G^k U_pea, and every G reflects about psi1 with U_pea^* ... U_pea.
  const std::uint64_t prepare = 1 + 2 * static_cast<std::uint64_t>(k);
  CostCounters c;
  c.re_preparations = static_cast<std::uint64_t>(aa_rounds);
  c.pea_applications = prepare + c.re_preparations * 2 * prepare;
  c.reflection_applications = static_cast<std::uint64_t>(k) + c.re_preparations;
  c.marking_applications = c.reflection_applications;
  return c;
}

namespace {

template <typename T, typename F>
void put_optional(json& doc, const char* key, const std::optional<T>& v, F convert) {
  if (v) doc[key] = convert(*v);
}

template <typename T, typename F>
std::optional<T> get_optional(const json& doc, const char* key, F convert) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return convert(*it);
}

json filter_json(const FilterReport& f) {
  return {{"count_L", f.count_L},
          {"count_Lprime", f.count_Lprime},
          {"iterations_k", f.iterations_k},
          {"good_probability_before", f.good_probability_before},
          {"good_probability_after", f.good_probability_after},
          {"residual_bad_probability", f.residual_bad_probability},
          {"projected", f.projected}};
}

FilterReport filter_from(const json& j) {
  FilterReport f;
  f.count_L = j.at("count_L").get<std::uint64_t>();
  f.count_Lprime = j.at("count_Lprime").get<std::uint64_t>();
  f.iterations_k = j.at("iterations_k").get<int>();
  f.good_probability_before = j.at("good_probability_before").get<double>();
  f.good_probability_after = j.at("good_probability_after").get<double>();
  f.residual_bad_probability = j.at("residual_bad_probability").get<double>();
  f.projected = j.at("projected").get<bool>();
  return f;
}

json maxfind_json(const MaxFindResult& r) {
  json qubits = json::array();
  for (const auto& q : r.trace.qubits) {
    json draws = json::array();
    for (const auto& d : q.draws) {
      draws.push_back({{"round", d.round},
                       {"probability", d.probability},
                       {"outcome", d.outcome},
                       {"accepted", d.accepted}});
    }
    qubits.push_back({{"qubit", q.qubit},
                      {"probability_one_initial", q.probability_one_initial},
                      {"aa_rounds_applied", q.aa_rounds_applied},
                      {"probability_one_after_aa", q.probability_one_after_aa},
                      {"samples_drawn", q.samples_drawn},
                      {"decided_bit", q.decided_bit},
                      {"collapse_probability", q.collapse_probability},
                      {"draws", std::move(draws)}});
  }
  return {{"phi_int", r.phi_int},
          {"subset_mask", r.subset.bits},
          {"exact", r.exact},
          {"trace",
           {{"re_preparations", r.trace.re_preparations},
            {"reflections", r.trace.reflections},
            {"qubits", std::move(qubits)}}}};
}

MaxFindResult maxfind_from(const json& j) {
  MaxFindResult r;
  r.phi_int = j.at("phi_int").get<std::uint64_t>();
  r.subset = SubsetMask{j.at("subset_mask").get<std::uint64_t>()};
  r.exact = j.at("exact").get<bool>();
  const auto& t = j.at("trace");
  r.trace.re_preparations = t.at("re_preparations").get<int>();
  r.trace.reflections = t.at("reflections").get<int>();
  for (const auto& q : t.at("qubits")) {
    QubitRecord rec;
    rec.qubit = q.at("qubit").get<int>();
    rec.probability_one_initial = q.at("probability_one_initial").get<double>();
    rec.aa_rounds_applied = q.at("aa_rounds_applied").get<int>();
    rec.probability_one_after_aa = q.at("probability_one_after_aa").get<double>();
    rec.samples_drawn = q.at("samples_drawn").get<int>();
    rec.decided_bit = q.at("decided_bit").get<int>();
    rec.collapse_probability = q.at("collapse_probability").get<double>();
    for (const auto& d : q.at("draws")) {
      rec.draws.push_back({d.at("round").get<int>(), d.at("probability").get<double>(),
                           d.at("outcome").get<int>(), d.at("accepted").get<bool>()});
    }
    r.trace.qubits.push_back(std::move(rec));
  }
  return r;
}

json conditional_json(const std::optional<BitConditional>& c) {
  if (!c) return nullptr;
  return {{"t", c->t},
          {"ones", c->ones},
          {"matching", c->matching},
          {"probability", c->probability()}};
}

std::optional<BitConditional> conditional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return BitConditional{j.at("t").get<int>(), j.at("ones").get<std::uint64_t>(),
                        j.at("matching").get<std::uint64_t>()};
}

json counters_json(const CostCounters& c) {
  return {{"pea_applications", c.pea_applications},
          {"reflection_applications", c.reflection_applications},
          {"re_preparations", c.re_preparations},
          {"marking_applications", c.marking_applications}};
}

CostCounters counters_from(const json& j) {
  return {j.at("pea_applications").get<std::uint64_t>(),
          j.at("reflection_applications").get<std::uint64_t>(),
          j.at("re_preparations").get<std::uint64_t>(),
          j.at("marking_applications").get<std::uint64_t>()};
}

}  // namespace

json to_json(const RunReport& r) {
  json doc;
  doc["command"] = r.command;
  doc["mode"] = r.mode;
  doc["instance"] = to_json(r.config);
  doc["seed"] = r.seed;
  put_optional(doc, "filter", r.filter, filter_json);
  put_optional(doc, "maxfind", r.maxfind, maxfind_json);
  put_optional(doc, "answer", r.answer, [](const Answer& a) {
    return json{{"phi_int", a.phi_int}, {"phi_turns", a.phi_turns}, {"subset", a.subset}};
  });
  put_optional(doc, "classical", r.classical, [](const ClassicalSummary& c) {
    return json{{"feasible", c.feasible},
                {"phi_max_int", c.phi_max_int},
                {"argmax_subsets", c.argmax_subsets},
                {"count_L", c.count_L},
                {"count_Lprime", c.count_Lprime}};
  });
  put_optional(doc, "knapsack", r.knapsack, [](const KnapsackSummary& k) {
    json j{{"best_value", k.best_value},
           {"weight_of_best", k.weight_of_best},
           {"subset", k.subset}};
    if (k.brute_force_best) j["brute_force_best"] = *k.brute_force_best;
    return j;
  });
  put_optional(doc, "assumptions", r.assumptions, [](const AssumptionsSummary& a) {
    json conds = json::array();
    for (const auto& c : a.conditionals) conds.push_back(conditional_json(c));
    return json{{"count_L", a.count_L},
                {"count_Lprime", a.count_Lprime},
                {"assumption1_ratio", a.assumption1_ratio},
                {"phi_max_bits", a.phi_max_bits},
                {"conditionals", std::move(conds)},
                {"min_conditional", a.min_conditional}};
  });
  put_optional(doc, "compare", r.compare, [](const CompareSummary& c) {
    json bits = json::array();
    for (const auto& b : c.bits) {
      bits.push_back({{"t", b.t},
                      {"profile", conditional_json(b.profile)},
                      {"on_path_runs", b.on_path_runs},
                      {"mean_probability_one_initial", b.mean_probability_one_initial},
                      {"mean_probability_one_after_aa", b.mean_probability_one_after_aa},
                      {"draws", b.draws},
                      {"draws_one", b.draws_one},
                      {"mean_draw_probability", b.mean_draw_probability}});
    }
    return json{{"trials", c.trials},
                {"agreements", c.agreements},
                {"agreement_rate", c.agreement_rate},
                {"strict", c.strict},
                {"mismatch", c.mismatch},
                {"phi_max_int", c.phi_max_int},
                {"answers", c.answers},
                {"bits", std::move(bits)}};
  });
  json files = json::array();
  for (const auto& f : r.distribution_files) files.push_back({{"label", f.label}, {"path", f.path}});
  doc["distribution_files"] = std::move(files);
  doc["wall_time_seconds"] = r.wall_time_seconds ? json(*r.wall_time_seconds) : json(nullptr);
  doc["counters"] = counters_json(r.counters);
  return doc;
}

RunReport report_from_json(const json& doc) {
  try {
    RunReport r;
    r.command = doc.at("command").get<std::string>();
    r.mode = doc.at("mode").get<std::string>();
    r.config = parse_instance(doc.at("instance"));
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.filter = get_optional<FilterReport>(doc, "filter", filter_from);
    r.maxfind = get_optional<MaxFindResult>(doc, "maxfind", maxfind_from);
    r.answer = get_optional<Answer>(doc, "answer", [](const json& j) {
      return Answer{j.at("phi_int").get<std::uint64_t>(), j.at("phi_turns").get<double>(),
                    j.at("subset").get<std::string>()};
    });
    r.classical = get_optional<ClassicalSummary>(doc, "classical", [](const json& j) {
      return ClassicalSummary{j.at("feasible").get<bool>(),
                              j.at("phi_max_int").get<std::uint64_t>(),
                              j.at("argmax_subsets").get<std::vector<std::string>>(),
                              j.at("count_L").get<std::uint64_t>(),
                              j.at("count_Lprime").get<std::uint64_t>()};
    });
    r.knapsack = get_optional<KnapsackSummary>(doc, "knapsack", [](const json& j) {
      return KnapsackSummary{
          j.at("best_value").get<std::int64_t>(), j.at("weight_of_best").get<std::int64_t>(),
          j.at("subset").get<std::string>(),
          get_optional<std::int64_t>(j, "brute_force_best",
                                     [](const json& v) { return v.get<std::int64_t>(); })};
    });
    r.assumptions = get_optional<AssumptionsSummary>(doc, "assumptions", [](const json& j) {
      AssumptionsSummary a;
      a.count_L = j.at("count_L").get<std::uint64_t>();
      a.count_Lprime = j.at("count_Lprime").get<std::uint64_t>();
      a.assumption1_ratio = j.at("assumption1_ratio").get<double>();
      a.phi_max_bits = j.at("phi_max_bits").get<std::vector<int>>();
      for (const auto& c : j.at("conditionals")) a.conditionals.push_back(conditional_from(c));
      a.min_conditional = j.at("min_conditional").get<double>();
      return a;
    });
    r.compare = get_optional<CompareSummary>(doc, "compare", [](const json& j) {
      CompareSummary c;
      c.trials = j.at("trials").get<int>();
      c.agreements = j.at("agreements").get<int>();
      c.agreement_rate = j.at("agreement_rate").get<double>();
      c.strict = j.at("strict").get<bool>();
      c.mismatch = j.at("mismatch").get<bool>();
      c.phi_max_int = j.at("phi_max_int").get<std::uint64_t>();
      c.answers = j.at("answers").get<std::vector<std::uint64_t>>();
      for (const auto& b : j.at("bits")) {
        c.bits.push_back({b.at("t").get<int>(), conditional_from(b.at("profile")),
                          b.at("on_path_runs").get<int>(),
                          b.at("mean_probability_one_initial").get<double>(),
                          b.at("mean_probability_one_after_aa").get<double>(),
                          b.at("draws").get<int>(), b.at("draws_one").get<int>(),
                          b.at("mean_draw_probability").get<double>()});
      }
      return c;
    });
    for (const auto& f : doc.at("distribution_files")) {
      r.distribution_files.push_back(
          {f.at("label").get<std::string>(), f.at("path").get<std::string>()});
    }
    r.wall_time_seconds = get_optional<double>(doc, "wall_time_seconds",
                                               [](const json& v) { return v.get<double>(); });
    r.counters = counters_from(doc.at("counters"));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run report: ") + e.what());
  }
}

std::string serialize(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

RunReport deserialize_report(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return report_from_json(doc);
}

}  // namespace qsubset::harness
