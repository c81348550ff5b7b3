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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsubset::qsim {

/// How a segment's qubit labels map onto the bits of its sub-index.
enum class BitOrder {
  kMsbFirst,  ///< qubit 0 is the most significant bit of the sub-index
  kLsbFirst,  ///< qubit 0 is the least significant bit of the sub-index
};

struct Segment {
  std::string name;
  int num_qubits = 0;
  BitOrder order = BitOrder::kLsbFirst;

  bool operator==(const Segment&) const = default;
};

/**
 * Ordered partition of a register into named segments.
 *
 * Segments are listed most significant first: the first segment occupies the
 * highest bits of the basis index. Within a segment the sub-index is the
 * contiguous group of basis bits, so a segment's bit order only changes which
 * qubit label addresses which bit, never the integer a segment holds.
 *
 * Global qubit positions run through the segments in listed order, so
 * position 0 is qubit 0 of the first segment.
 */
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Segment> segments);

  /// One lsb-first segment named "q": qubit k is basis bit k.
  static RegisterLayout single(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Segment>& segments() const { return segments_; }

  bool contains(std::string_view name) const;
  const Segment& segment(std::string_view name) const;

  /// Global position of the segment's qubit 0.
  int first_qubit(std::string_view name) const;
  /// Basis-index bit holding the least significant bit of the segment.
  int bit_offset(std::string_view name) const;
  /// Basis-index bit addressed by a global qubit position.
  int basis_bit(int qubit) const;
  /// Global position of qubit `q` of the named segment.
  int qubit(std::string_view name, int q) const;

  /// Sub-index of `basis` within the named segment.
  std::uint64_t extract(std::uint64_t basis, std::string_view name) const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<Segment> segments_;
  int num_qubits_ = 0;
};

}  // namespace qsubset::qsim
