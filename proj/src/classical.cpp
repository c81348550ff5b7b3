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

#include "qsubset/classical.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "qsubset/errors.hpp"

namespace qsubset {

namespace {

void check_enumerable(const ProblemInstance& instance) {
  if (instance.n() > kMaxEnumerationElements) {
    throw CapacityError("enumeration is limited to " + std::to_string(kMaxEnumerationElements) +
                        " elements, got " + std::to_string(instance.n()));
  }
}

// Visits every mask in Gray-code order with its running sum.
template <typename Visit>
void for_each_subset(const std::vector<std::int64_t>& values, Visit&& visit) {
  const std::uint64_t count = std::uint64_t{1} << values.size();
  std::uint64_t mask = 0;
  std::int64_t sum = 0;
  visit(mask, sum);
  for (std::uint64_t i = 1; i < count; ++i) {
    const int k = std::countr_zero(i);
    mask ^= std::uint64_t{1} << k;
    sum += (mask >> k & 1) ? values[k] : -values[k];
    visit(mask, sum);
  }
}

}  // namespace

OracleReport brute_force(const ProblemInstance& instance) {
  check_enumerable(instance);
  OracleReport report;
  const std::int64_t target = instance.target;
  for_each_subset(instance.values, [&](std::uint64_t mask, std::int64_t sum) {
    if (sum >= target) {
      ++report.count_Lprime;
      return;
    }
    ++report.count_L;
    const auto s = static_cast<std::uint64_t>(sum);
    if (!report.feasible || s > report.phi_max_int) {
      report.feasible = true;
      report.phi_max_int = s;
      report.argmax_masks.clear();
    }
    if (s == report.phi_max_int) report.argmax_masks.push_back(SubsetMask{mask});
  });
  std::sort(report.argmax_masks.begin(), report.argmax_masks.end());
  return report;
}

std::uint64_t dp_solve(const ProblemInstance& instance) {
  const std::int64_t target = instance.target;
  if (target <= 0) throw InfeasibleError("target 0 admits no subset sum");
  if (target > kMaxDpTarget) throw CapacityError("target too large for the reachable-sums table");
  std::vector<char> reachable(static_cast<std::size_t>(target), 0);
  reachable[0] = 1;
  for (std::int64_t v : instance.values) {
    if (v < 0) throw InstanceError("values must be non-negative");
    if (v == 0 || v >= target) continue;
    for (std::int64_t s = target - 1 - v; s >= 0; --s) {
      if (reachable[static_cast<std::size_t>(s)]) reachable[static_cast<std::size_t>(s + v)] = 1;
    }
  }
  for (std::int64_t s = target - 1; s > 0; --s) {
    if (reachable[static_cast<std::size_t>(s)]) return static_cast<std::uint64_t>(s);
  }
  return 0;
}

double assumption1_ratio(const OracleReport& report) {
  if (report.count_L == 0) throw InfeasibleError("L is empty: no subset sums below the target");
  return double(report.count_Lprime) / double(report.count_L);
}

std::uint64_t Assumption2Profile::phi_max_int() const {
  std::uint64_t v = 0;
  for (int b : phi_max_bits) v = (v << 1) | static_cast<std::uint64_t>(b);
  return v;
}

Assumption2Profile assumption2_profile(const ProblemInstance& instance) {
  check_enumerable(instance);
  std::vector<std::uint64_t> members;
  for_each_subset(instance.values, [&](std::uint64_t, std::int64_t sum) {
    if (sum < instance.target) members.push_back(static_cast<std::uint64_t>(sum));
  });
  if (members.empty()) throw InfeasibleError("L is empty: no subset sums below the target");

  const int m = instance.precision_bits;
  const std::uint64_t phi_max = *std::max_element(members.begin(), members.end());
  Assumption2Profile profile;
  for (int t = 0; t < m; ++t) {
    const int shift = m - 1 - t;
    profile.phi_max_bits.push_back(static_cast<int>(phi_max >> shift & 1));

    BitConditional c;
    c.t = t;
    for (std::uint64_t s : members) {
      if ((s >> (shift + 1)) != (phi_max >> (shift + 1))) continue;
      ++c.matching;
      c.ones += s >> shift & 1;
    }
    if (c.matching == 0) {
      profile.conditionals.emplace_back();
      continue;
    }
    if (profile.phi_max_bits.back() == 1) {
      profile.min_conditional = std::min(profile.min_conditional, c.probability());
    }
    profile.conditionals.emplace_back(c);
  }
  return profile;
}

}  // namespace qsubset
