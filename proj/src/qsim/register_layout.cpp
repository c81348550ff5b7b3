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

#include "qsubset/qsim/register_layout.hpp"

#include <set>

#include "qsubset/errors.hpp"

namespace qsubset::qsim {

RegisterLayout::RegisterLayout(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  std::set<std::string, std::less<>> names;
  for (const auto& seg : segments_) {
    if (seg.num_qubits < 1) {
      throw LayoutError("segment '" + seg.name + "' has no qubits");
    }
    if (!names.insert(seg.name).second) {
      throw LayoutError("duplicate segment name '" + seg.name + "'");
    }
    num_qubits_ += seg.num_qubits;
  }
}

RegisterLayout RegisterLayout::single(int num_qubits) {
  return RegisterLayout({{"q", num_qubits, BitOrder::kLsbFirst}});
}

bool RegisterLayout::contains(std::string_view name) const {
  for (const auto& seg : segments_) {
    if (seg.name == name) return true;
  }
  return false;
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].name == name) return i;
  }
  throw LayoutError("unknown segment '" + std::string(name) + "'");
}

const Segment& RegisterLayout::segment(std::string_view name) const {
  return segments_[index_of(name)];
}

int RegisterLayout::first_qubit(std::string_view name) const {
  const auto idx = index_of(name);
  int pos = 0;
  for (std::size_t i = 0; i < idx; ++i) pos += segments_[i].num_qubits;
  return pos;
}

int RegisterLayout::bit_offset(std::string_view name) const {
  const auto idx = index_of(name);
  int offset = 0;
  for (std::size_t i = idx + 1; i < segments_.size(); ++i) {
    offset += segments_[i].num_qubits;
  }
  return offset;
}

int RegisterLayout::basis_bit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw RangeError("qubit " + std::to_string(qubit) + " outside a " +
                     std::to_string(num_qubits_) + "-qubit layout");
  }
  int first = 0;
  for (const auto& seg : segments_) {
    if (qubit < first + seg.num_qubits) {
      const int q = qubit - first;
      const int offset = bit_offset(seg.name);
      return seg.order == BitOrder::kMsbFirst ? offset + seg.num_qubits - 1 - q
                                              : offset + q;
    }
    first += seg.num_qubits;
  }
  throw RangeError("unreachable qubit lookup");
}

int RegisterLayout::qubit(std::string_view name, int q) const {
  const auto& seg = segment(name);
  if (q < 0 || q >= seg.num_qubits) {
    throw RangeError("qubit " + std::to_string(q) + " outside segment '" +
                     seg.name + "'");
  }
  return first_qubit(name) + q;
}

std::uint64_t RegisterLayout::extract(std::uint64_t basis,
                                      std::string_view name) const {
  const auto& seg = segment(name);
  const std::uint64_t mask = (std::uint64_t{1} << seg.num_qubits) - 1;
  return (basis >> bit_offset(name)) & mask;
}

}  // namespace qsubset::qsim
