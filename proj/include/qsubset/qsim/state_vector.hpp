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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

#include "qsubset/errors.hpp"
#include "qsubset/qsim/register_layout.hpp"

namespace qsubset::qsim {

/// Hard ceiling on dense storage; 2^30 doubles-complex is 16 GiB.
inline constexpr int kMaxStateQubits = 30;

/**
 * Dense statevector over a register layout.
 *
 * Holds 2^num_qubits complex amplitudes; basis index i is read through the
 * layout (first segment in the most significant bits). The public operations
 * in ops.hpp keep the state normalised.
 */
template <typename Scalar = double>
class StateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  StateVector(RegisterLayout layout, Amplitudes amplitudes)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (layout_.num_qubits() < 1 || layout_.num_qubits() > kMaxStateQubits) {
      throw CapacityError("state must have 1.." +
                          std::to_string(kMaxStateQubits) + " qubits, got " +
                          std::to_string(layout_.num_qubits()));
    }
    if (amplitudes_.size() != (Eigen::Index{1} << layout_.num_qubits())) {
      throw LayoutError("amplitude count does not match 2^num_qubits");
    }
  }

  int num_qubits() const { return layout_.num_qubits(); }
  Eigen::Index dim() const { return amplitudes_.size(); }

  const RegisterLayout& layout() const { return layout_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Amplitudes& amplitudes() { return amplitudes_; }

  const Complex& operator[](Eigen::Index i) const { return amplitudes_[i]; }
  Complex& operator[](Eigen::Index i) { return amplitudes_[i]; }

  Scalar norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Per-basis-state probabilities |a_i|^2.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> probabilities() const {
    return amplitudes_.cwiseAbs2();
  }

 private:
  RegisterLayout layout_;
  Amplitudes amplitudes_;
};

using StateVectord = StateVector<double>;

}  // namespace qsubset::qsim
