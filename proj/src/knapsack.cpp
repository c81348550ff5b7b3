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

#include "qsubset/knapsack.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qsubset/errors.hpp"

namespace qsubset {

namespace {

std::int64_t total(const std::vector<std::int64_t>& xs) {
  return std::accumulate(xs.begin(), xs.end(), std::int64_t{0});
}

}  // namespace

void KnapsackInstance::validate() const {
  if (weights.empty()) throw InstanceError("knapsack needs at least one item");
  if (weights.size() != values.size()) {
    throw InstanceError("weights and values differ in length");
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0 || values[k] < 0) throw InstanceError("weights and values must be >= 0");
  }
  if (capacity < 0) throw InstanceError("capacity must be >= 0");
  if (weight_bits < 1 || value_bits < 1 || phase_bits() > kMaxPrecisionBits) {
    throw PrecisionError("field widths must be positive and fit the precision limit");
  }
  const std::int64_t sw = total(weights);
  const std::int64_t sv = total(values);
  if (sv >= std::int64_t{1} << value_bits) {
    throw PrecisionError("value sum " + std::to_string(sv) + " overflows " +
                         std::to_string(value_bits) + " value bits");
  }
  if (sw >= std::int64_t{1} << weight_bits) {
    throw PrecisionError("weight sum " + std::to_string(sw) + " overflows " +
                         std::to_string(weight_bits) + " weight bits");
  }
  if ((sw << value_bits) + sv >= std::int64_t{1} << (phase_bits() - 1)) {
    throw PrecisionError("packed phase reaches half a turn; widen the weight field");
  }
}

KnapsackEncoding encode_knapsack(const KnapsackInstance& instance) {
  instance.validate();
  std::vector<std::int64_t> packed(instance.weights.size());
  for (std::size_t k = 0; k < packed.size(); ++k) {
    packed[k] = (instance.weights[k] << instance.value_bits) + instance.values[k];
  }
  const int m = instance.phase_bits();
  return KnapsackEncoding{
      PhaseOracle(std::move(packed), m),
      pea_layout(m, instance.n()),
      qsim::RegisterLayout({{"weight", instance.weight_bits, qsim::BitOrder::kMsbFirst},
                            {"value", instance.value_bits, qsim::BitOrder::kMsbFirst},
                            {std::string(kIndexSegment), instance.n(),
                             qsim::BitOrder::kLsbFirst}}),
      SearchField{0, instance.weight_bits},
      SearchField{instance.weight_bits, instance.value_bits},
  };
}

KnapsackResult run_knapsack(const KnapsackInstance& instance, const MaxFindPolicy& policy,
                            std::uint64_t seed, const KnapsackOptions& options) {
  const auto enc = encode_knapsack(instance);
  const int m = instance.phase_bits();
  const auto capacity = static_cast<std::uint64_t>(instance.capacity);
  const int shift = instance.value_bits;

  const auto psi1 = run_pea(prepare_initial(m, instance.n()), enc.oracle, options.backend);
  if (options.observer) options.observer("post-pea", psi1);
  const std::uint64_t count = count_feasible(psi1, capacity, shift);
  const int k = plan_iterations(count, std::uint64_t{1} << instance.n(), options.iterations);
  auto filtered = run_filter(psi1, psi1, capacity, k, {options.exact_filter, shift});
  if (options.observer) options.observer("post-filter", filtered.state);

  MaxFindOptions mf;
  mf.field = enc.value_field;
  mf.observer = options.observer;
  auto found = run_maxfind(filtered.state, policy, seed, mf);

  KnapsackResult result;
  result.feasible = true;
  result.best_value = static_cast<std::int64_t>(found.phi_int);
  result.subset = found.subset;
  // read the weight field back from the packed phase of the chosen mask
  result.weight_of_best =
      static_cast<std::int64_t>(eigenphase_int(enc.oracle, found.subset) >> shift);
  result.trace = std::move(found.trace);
  result.filter = filtered.report;
  return result;
}

KnapsackResult brute_force_knapsack(const KnapsackInstance& instance) {
  if (instance.weights.size() != instance.values.size()) {
    throw InstanceError("weights and values differ in length");
  }
  if (instance.n() > kMaxKnapsackEnumeration) {
    throw CapacityError("knapsack enumeration is limited to " +
                        std::to_string(kMaxKnapsackEnumeration) + " items");
  }
  KnapsackResult best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << instance.n()); ++mask) {
    std::int64_t w = 0;
    std::int64_t v = 0;
    for (int k = 0; k < instance.n(); ++k) {
      if (mask >> k & 1) {
        w += instance.weights[static_cast<std::size_t>(k)];
        v += instance.values[static_cast<std::size_t>(k)];
      }
    }
    if (w >= instance.capacity) continue;
    if (!best.feasible || v > best.best_value) {
      best.feasible = true;
      best.best_value = v;
      best.weight_of_best = w;
      best.subset = SubsetMask{mask};
      best.argmax_masks.clear();
    }
    if (v == best.best_value) best.argmax_masks.push_back(SubsetMask{mask});
  }
  return best;
}

}  // namespace qsubset
