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

#include "qsubset/harness/run_config.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qsubset/errors.hpp"

namespace qsubset::harness {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown key \"" + key + "\" in " + std::string(where));
    }
  }
}

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing required key \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const char* key) {
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > std::uint64_t(INT64_MAX)) {
    throw ParseError(std::string("\"") + key + "\" is out of range");
  }
  return v.get<std::int64_t>();
}

int as_small_int(const json& v, const char* key) {
  const auto x = as_int(v, key);
  if (x < INT32_MIN || x > INT32_MAX) throw ParseError(std::string("\"") + key + "\" is out of range");
  return static_cast<int>(x);
}

bool as_bool(const json& v, const char* key) {
  if (!v.is_boolean()) throw ParseError(std::string("\"") + key + "\" must be true or false");
  return v.get<bool>();
}

std::vector<std::int64_t> as_int_list(const json& v, const char* key) {
  if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array of integers");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_int(x, key));
  return out;
}

template <typename T, typename Read>
std::optional<T> optional_field(const json& obj, const char* key, Read read) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return read(*it, key);
}

MaxFindPolicy parse_policy(const json& p) {
  if (!p.is_object()) throw ParseError("\"policy\" must be an object");
  check_keys(p, {"samples_per_round", "aa_rounds_max", "revert_on_zero", "greedy_threshold"},
             "policy");
  MaxFindPolicy policy;
  if (auto v = optional_field<int>(p, "samples_per_round", as_small_int)) {
    policy.samples_per_round = *v;
  }
  if (auto v = optional_field<int>(p, "aa_rounds_max", as_small_int)) policy.aa_rounds_max = *v;
  if (auto v = optional_field<bool>(p, "revert_on_zero", as_bool)) policy.revert_on_zero = *v;
  policy.greedy_threshold =
      optional_field<double>(p, "greedy_threshold", [](const json& v, const char* key) {
        if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
        return v.get<double>();
      });
  try {
    policy.validate();
  } catch (const UsageError& e) {
    throw InstanceError(std::string("invalid policy: ") + e.what());
  }
  return policy;
}

}  // namespace

std::pair<int, int> auto_knapsack_bits(const std::vector<std::int64_t>& weights,
                                       const std::vector<std::int64_t>& values,
                                       std::int64_t /*capacity*/) {
  const auto sw = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  const auto sv = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (sw < 0 || sv < 0) throw InstanceError("weights and values must be >= 0");
  const int value_bits = std::max(1, static_cast<int>(std::bit_width(std::uint64_t(sv))));
  for (int weight_bits = 1; weight_bits + value_bits <= kMaxPrecisionBits; ++weight_bits) {
    if (sw >= std::int64_t{1} << weight_bits) continue;
    if ((sw << value_bits) + sv < std::int64_t{1} << (weight_bits + value_bits - 1)) {
      return {weight_bits, value_bits};
    }
  }
  throw PrecisionError("knapsack sums exceed the precision limit");
}

RunConfig parse_instance(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  RunConfig config;
  const bool knapsack = doc.contains("weights");
  if (knapsack) {
    check_keys(doc,
               {"weights", "values", "capacity", "weight_bits", "value_bits", "seed", "policy",
                "exact_filter", "backend", "iterations"},
               "knapsack instance");
  } else {
    check_keys(doc,
               {"values", "target", "precision_bits", "seed", "policy", "exact_filter",
                "backend", "iterations"},
               "instance");
  }

  if (auto seed = doc.find("seed"); seed != doc.end()) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0)) {
      throw ParseError("\"seed\" must be a non-negative integer");
    }
    config.seed = seed->get<std::uint64_t>();
  }
  if (auto p = doc.find("policy"); p != doc.end()) config.policy = parse_policy(*p);
  if (auto v = optional_field<bool>(doc, "exact_filter", as_bool)) config.exact_filter = *v;
  if (auto b = doc.find("backend"); b != doc.end()) {
    if (!b->is_string()) throw ParseError("\"backend\" must be \"circuit\" or \"direct\"");
    config.backend = parse_pea_backend(b->get<std::string>());
  }
  config.iterations = optional_field<int>(doc, "iterations", as_small_int);
  if (config.iterations && *config.iterations < 0) {
    throw InstanceError("\"iterations\" must be non-negative");
  }

  const auto values = as_int_list(require(doc, "values"), "values");
  if (knapsack) {
    KnapsackInstance k;
    k.weights = as_int_list(require(doc, "weights"), "weights");
    k.values = values;
    k.capacity = as_int(require(doc, "capacity"), "capacity");
    const auto wb = optional_field<int>(doc, "weight_bits", as_small_int);
    const auto vb = optional_field<int>(doc, "value_bits", as_small_int);
    if (!wb || !vb) {
      if (k.weights.size() != k.values.size()) {
        throw InstanceError("weights and values differ in length");
      }
      const auto [w_auto, v_auto] = auto_knapsack_bits(k.weights, k.values, k.capacity);
      k.weight_bits = wb.value_or(w_auto);
      k.value_bits = vb.value_or(v_auto);
    } else {
      k.weight_bits = *wb;
      k.value_bits = *vb;
    }
    k.validate();
    config.knapsack = std::move(k);
  } else {
    const auto target = as_int(require(doc, "target"), "target");
    const auto m = optional_field<int>(doc, "precision_bits", as_small_int);
    config.problem = normalize_instance(values, target, m);
  }
  return config;
}

RunConfig parse_instance_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_instance(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad instance field: ") + e.what());
  }
}

RunConfig parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

json to_json(const RunConfig& config) {
  json doc;
  if (config.knapsack) {
    const auto& k = *config.knapsack;
    doc["weights"] = k.weights;
    doc["values"] = k.values;
    doc["capacity"] = k.capacity;
    doc["weight_bits"] = k.weight_bits;
    doc["value_bits"] = k.value_bits;
  } else {
    doc["values"] = config.problem.values;
    doc["target"] = config.problem.target;
    doc["precision_bits"] = config.problem.precision_bits;
  }
  doc["seed"] = config.seed;
  json policy{{"samples_per_round", config.policy.samples_per_round},
              {"aa_rounds_max", config.policy.aa_rounds_max},
              {"revert_on_zero", config.policy.revert_on_zero}};
  if (config.policy.greedy_threshold) policy["greedy_threshold"] = *config.policy.greedy_threshold;
  doc["policy"] = std::move(policy);
  doc["exact_filter"] = config.exact_filter;
  doc["backend"] = std::string(to_string(config.backend));
  if (config.iterations) doc["iterations"] = *config.iterations;
  return doc;
}

}  // namespace qsubset::harness
