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

// Fixed-point encoding of subset sums as eigenphases of a diagonal unitary.
//
// Every value v_k is read as the dyadic fraction v_k / 2^m turns. A subset
// mask j then carries the eigenphase sum_{k in j} v_k / 2^m, so all phases
// are exact m-bit fractions and comparisons against the target stay in
// integer arithmetic.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsubset {

/// Largest precision the integer encoding accepts.
inline constexpr int kMaxPrecisionBits = 48;
/// Largest element count a phase oracle tabulates.
inline constexpr int kMaxOracleElements = 30;

/// Bit k set <=> element k is in the subset.
struct SubsetMask {
  std::uint64_t bits = 0;

  bool contains(int element) const { return (bits >> element) & 1U; }
  auto operator<=>(const SubsetMask&) const = default;
};

/// Integer subset-sum instance with its phase-register precision.
struct ProblemInstance {
  std::vector<std::int64_t> values;
  std::int64_t target = 0;
  int precision_bits = 1;

  int n() const { return static_cast<int>(values.size()); }
  std::int64_t total() const;
  /// values[k] / 2^m.
  double scaled_value(int k) const;
  double scaled_target() const;

  bool operator==(const ProblemInstance&) const = default;
};

/**
 * Validates raw values and picks the precision.
 *
 * Without an override, m is the smallest count with sum(values) < 2^(m-1)
 * and target <= 2^m. An override that violates either bound raises
 * PrecisionError. Empty or negative input raises InstanceError.
 */
ProblemInstance normalize_instance(std::span<const std::int64_t> raw_values,
                                   std::int64_t raw_target,
                                   std::optional<int> m_override = std::nullopt);

/// The diagonal unitary U = R_{n-1} x ... x R_0 described by its eigenphases.
class PhaseOracle {
 public:
  /// Values in units of 2^-m turns; requires sum(values) < 2^(m-1).
  PhaseOracle(std::vector<std::int64_t> values, int precision_bits);
  explicit PhaseOracle(const ProblemInstance& instance);

  /// Relaxes the half-turn bound to sum(values) < 2^m. Phase estimation
  /// itself only needs phases below one turn; the max-finding stages do not
  /// accept such oracles.
  static PhaseOracle with_full_range(std::vector<std::int64_t> values,
                                     int precision_bits);

  int n() const { return static_cast<int>(values_.size()); }
  int precision_bits() const { return precision_bits_; }
  std::span<const std::int64_t> values() const { return values_; }
  double scaled_value(int k) const;

  /// Phase integer of every mask, indexed by mask.
  std::span<const std::uint64_t> eigenphases() const { return table_; }
  std::uint64_t max_eigenphase() const;

 private:
  PhaseOracle(std::vector<std::int64_t> values, int precision_bits,
              int headroom_bits);

  std::vector<std::int64_t> values_;
  int precision_bits_;
  std::vector<std::uint64_t> table_;
};

/// Sum of the raw values selected by `mask`, i.e. the eigenphase in 2^-m turns.
std::uint64_t eigenphase_int(const PhaseOracle& oracle, SubsetMask mask);

/// Eigenphase of `mask` in turns.
double eigenphase_turns(const PhaseOracle& oracle, SubsetMask mask);

/// n characters, element 0 leftmost: bits {2,3} over 7 elements -> "0011000".
std::string render_mask(SubsetMask mask, int n);

/// Inverse of render_mask.
SubsetMask parse_mask(std::string_view text);

}  // namespace qsubset
