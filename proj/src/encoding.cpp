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

#include "qsubset/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qsubset/errors.hpp"

namespace qsubset {

namespace {

std::int64_t checked_total(std::span<const std::int64_t> values) {
  std::int64_t total = 0;
  for (auto v : values) {
    if (v < 0) throw InstanceError("values must be non-negative");
    if (v > (std::int64_t{1} << kMaxPrecisionBits) - total) {
      throw PrecisionError("value sum exceeds the supported precision");
    }
    total += v;
  }
  return total;
}

bool fits(std::int64_t total, std::int64_t target, int m) {
  return total < (std::int64_t{1} << (m - 1)) && target <= (std::int64_t{1} << m);
}

}  // namespace

std::int64_t ProblemInstance::total() const {
  return std::accumulate(values.begin(), values.end(), std::int64_t{0});
}

double ProblemInstance::scaled_value(int k) const {
  return std::ldexp(static_cast<double>(values.at(k)), -precision_bits);
}

double ProblemInstance::scaled_target() const {
  return std::ldexp(static_cast<double>(target), -precision_bits);
}

ProblemInstance normalize_instance(std::span<const std::int64_t> raw_values,
                                   std::int64_t raw_target,
                                   std::optional<int> m_override) {
  if (raw_values.empty()) throw InstanceError("instance has no values");
  if (raw_target < 0) throw InstanceError("target must be non-negative");
  const std::int64_t total = checked_total(raw_values);
  if (raw_target > (std::int64_t{1} << kMaxPrecisionBits)) {
    throw PrecisionError("target exceeds the supported precision");
  }

  int m = 0;
  if (m_override) {
    m = *m_override;
    if (m < 1 || m > kMaxPrecisionBits) {
      throw PrecisionError("precision must be 1.." + std::to_string(kMaxPrecisionBits) +
                           " bits");
    }
    if (total >= (std::int64_t{1} << (m - 1))) {
      throw PrecisionError("sum of values " + std::to_string(total) +
                           " needs more than " + std::to_string(m) + " bits");
    }
    if (raw_target > (std::int64_t{1} << m)) {
      throw PrecisionError("target " + std::to_string(raw_target) + " exceeds 2^" +
                           std::to_string(m));
    }
  } else {
    m = 1;
    while (!fits(total, raw_target, m)) ++m;
  }
  return {{raw_values.begin(), raw_values.end()}, raw_target, m};
}

PhaseOracle::PhaseOracle(std::vector<std::int64_t> values, int precision_bits)
    : PhaseOracle(std::move(values), precision_bits, 1) {}

PhaseOracle PhaseOracle::with_full_range(std::vector<std::int64_t> values,
                                         int precision_bits) {
  return PhaseOracle(std::move(values), precision_bits, 0);
}

PhaseOracle::PhaseOracle(std::vector<std::int64_t> values, int precision_bits,
                         int headroom_bits)
    : values_(std::move(values)), precision_bits_(precision_bits) {
  if (values_.empty()) throw InstanceError("oracle needs at least one value");
  if (n() > kMaxOracleElements) {
    throw CapacityError("oracle limited to " + std::to_string(kMaxOracleElements) +
                        " elements");
  }
  if (precision_bits_ < 1 || precision_bits_ > kMaxPrecisionBits) {
    throw PrecisionError("precision out of range");
  }
  const std::int64_t total = checked_total(values_);
  if (total >= (std::int64_t{1} << (precision_bits_ - headroom_bits))) {
    throw PrecisionError(headroom_bits ? "eigenphases would reach half a turn"
                                       : "eigenphases would reach a full turn");
  }
  table_.assign(std::size_t{1} << n(), 0);
  for (std::size_t mask = 1; mask < table_.size(); ++mask) {
    const int low = std::countr_zero(mask);
    table_[mask] = table_[mask & (mask - 1)] + static_cast<std::uint64_t>(values_[low]);
  }
}

PhaseOracle::PhaseOracle(const ProblemInstance& instance)
    : PhaseOracle(instance.values, instance.precision_bits) {}

double PhaseOracle::scaled_value(int k) const {
  return std::ldexp(static_cast<double>(values_.at(k)), -precision_bits_);
}

std::uint64_t PhaseOracle::max_eigenphase() const {
  return *std::max_element(table_.begin(), table_.end());
}

std::uint64_t eigenphase_int(const PhaseOracle& oracle, SubsetMask mask) {
  if (mask.bits >= oracle.eigenphases().size()) {
    throw RangeError("mask " + std::to_string(mask.bits) + " outside 2^" +
                     std::to_string(oracle.n()));
  }
  return oracle.eigenphases()[mask.bits];
}

double eigenphase_turns(const PhaseOracle& oracle, SubsetMask mask) {
  return std::ldexp(static_cast<double>(eigenphase_int(oracle, mask)),
                    -oracle.precision_bits());
}

std::string render_mask(SubsetMask mask, int n) {
  if (n < 0 || n > 64 || (n < 64 && (mask.bits >> n) != 0)) {
    throw RangeError("mask does not fit in " + std::to_string(n) + " elements");
  }
  std::string out(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (mask.contains(k)) out[static_cast<std::size_t>(k)] = '1';
  }
  return out;
}

SubsetMask parse_mask(std::string_view text) {
  if (text.size() > 64) throw ParseError("mask longer than 64 elements");
  SubsetMask mask;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '1') {
      mask.bits |= std::uint64_t{1} << k;
    } else if (text[k] != '0') {
      throw ParseError("mask characters must be 0 or 1");
    }
  }
  return mask;
}

}  // namespace qsubset
