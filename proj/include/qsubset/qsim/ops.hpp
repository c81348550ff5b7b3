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

// Statevector primitives. Every operation takes its state by value and
// returns the transformed state, so pipelines compose as expressions:
//
//   auto psi = apply_qft(apply_hadamard_layer(init_basis_state(layout, 0),
//                                             "phase"), "phase", true);

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsubset/errors.hpp"
#include "qsubset/qsim/state_vector.hpp"

namespace qsubset::qsim {

/// Smallest outcome probability a collapse accepts.
inline constexpr double kImpossibleOutcome = 1e-12;

struct MeasurementOutcome {
  int bit = 0;
  double probability = 0.0;
};

template <typename Scalar>
struct CollapseResult {
  StateVector<Scalar> state;
  Scalar probability;
};

/// Maps a segment sub-index to a phase in turns.
template <typename F, typename Scalar>
concept PhaseFunction = std::invocable<const F&, std::uint64_t> &&
    std::convertible_to<std::invoke_result_t<const F&, std::uint64_t>, Scalar>;

namespace detail {

template <typename Scalar>
std::complex<Scalar> turns_to_phasor(Scalar turns) {
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * turns;
  return {std::cos(angle), std::sin(angle)};
}

template <typename Scalar>
void hadamard_on_bit(typename StateVector<Scalar>::Amplitudes& a, int bit) {
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  const Eigen::Index stride = Eigen::Index{1} << bit;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & stride) continue;
    const auto lo = a[i];
    const auto hi = a[i | stride];
    a[i] = (lo + hi) * inv_sqrt2;
    a[i | stride] = (lo - hi) * inv_sqrt2;
  }
}

template <typename Scalar>
void controlled_phase_on_bits(typename StateVector<Scalar>::Amplitudes& a,
                              int bit_a, int bit_b, Scalar turns) {
  const auto phasor = turns_to_phasor(turns);
  const Eigen::Index both = (Eigen::Index{1} << bit_a) | (Eigen::Index{1} << bit_b);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & both) == both) a[i] *= phasor;
  }
}

template <typename Scalar>
void swap_bits(typename StateVector<Scalar>::Amplitudes& a, int bit_a, int bit_b) {
  if (bit_a == bit_b) return;
  const Eigen::Index ma = Eigen::Index{1} << bit_a;
  const Eigen::Index mb = Eigen::Index{1} << bit_b;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & ma) && !(i & mb)) std::swap(a[i], a[(i ^ ma) | mb]);
  }
}

template <typename Scalar, typename F>
std::vector<std::complex<Scalar>> phasor_table(int width, const F& phase_of) {
  std::vector<std::complex<Scalar>> table(std::size_t{1} << width);
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    table[k] = turns_to_phasor(static_cast<Scalar>(phase_of(k)));
  }
  return table;
}

}  // namespace detail

/// |basis_index> over an explicit layout.
template <typename Scalar = double>
StateVector<Scalar> init_basis_state(const RegisterLayout& layout,
                                     std::uint64_t basis_index) {
  if (layout.num_qubits() < 1 || layout.num_qubits() > kMaxStateQubits) {
    throw CapacityError("cannot allocate a " +
                        std::to_string(layout.num_qubits()) + "-qubit state");
  }
  const std::uint64_t dim = std::uint64_t{1} << layout.num_qubits();
  if (basis_index >= dim) {
    throw RangeError("basis index " + std::to_string(basis_index) +
                     " out of range for " + std::to_string(layout.num_qubits()) +
                     " qubits");
  }
  typename StateVector<Scalar>::Amplitudes amps =
      StateVector<Scalar>::Amplitudes::Zero(static_cast<Eigen::Index>(dim));
  amps[static_cast<Eigen::Index>(basis_index)] = Scalar(1);
  return StateVector<Scalar>(layout, std::move(amps));
}

/// |basis_index> over a single lsb-first register of `num_qubits`.
template <typename Scalar = double>
StateVector<Scalar> init_basis_state(int num_qubits, std::uint64_t basis_index) {
  if (num_qubits < 1) throw RangeError("a state needs at least one qubit");
  return init_basis_state<Scalar>(RegisterLayout::single(num_qubits), basis_index);
}

template <typename Scalar>
StateVector<Scalar> apply_hadamard_layer(StateVector<Scalar> state,
                                         std::string_view segment) {
  const auto& layout = state.layout();
  const int offset = layout.bit_offset(segment);
  const int width = layout.segment(segment).num_qubits;
  for (int b = offset; b < offset + width; ++b) {
    detail::hadamard_on_bit<Scalar>(state.amplitudes(), b);
  }
  return state;
}

/**
 * Multiplies every amplitude by e^{2 pi i phase_of(k)}, k being the amplitude's
 * sub-index within `segment`. Phases are in turns.
 */
template <typename Scalar, PhaseFunction<Scalar> F>
StateVector<Scalar> apply_phase_diagonal(StateVector<Scalar> state,
                                         std::string_view segment,
                                         const F& phase_of) {
  const auto& layout = state.layout();
  const int offset = layout.bit_offset(segment);
  const int width = layout.segment(segment).num_qubits;
  const auto table = detail::phasor_table<Scalar>(width, phase_of);
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] *= table[(static_cast<std::uint64_t>(i) >> offset) & mask];
  }
  return state;
}

/// As apply_phase_diagonal, restricted to amplitudes whose `control` qubit is 1.
template <typename Scalar, PhaseFunction<Scalar> F>
StateVector<Scalar> apply_controlled_phase_diagonal(StateVector<Scalar> state,
                                                    int control,
                                                    std::string_view segment,
                                                    const F& phase_of) {
  const auto& layout = state.layout();
  const int offset = layout.bit_offset(segment);
  const int width = layout.segment(segment).num_qubits;
  const int control_bit = layout.basis_bit(control);
  if (control_bit >= offset && control_bit < offset + width) {
    throw UsageError("control qubit lies inside the target segment");
  }
  const auto table = detail::phasor_table<Scalar>(width, phase_of);
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  const Eigen::Index control_mask = Eigen::Index{1} << control_bit;
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & control_mask) {
      a[i] *= table[(static_cast<std::uint64_t>(i) >> offset) & mask];
    }
  }
  return state;
}

/**
 * Quantum Fourier transform on a segment's sub-index:
 * |k> -> 2^{-w/2} sum_x e^{2 pi i k x / 2^w} |x>, built from Hadamards,
 * controlled phases and the final bit-reversal swaps. `inverse` runs the
 * adjoint circuit.
 */
template <typename Scalar>
StateVector<Scalar> apply_qft(StateVector<Scalar> state, std::string_view segment,
                              bool inverse = false) {
  const auto& layout = state.layout();
  const int offset = layout.bit_offset(segment);
  const int width = layout.segment(segment).num_qubits;
  auto& a = state.amplitudes();
  auto angle = [](int distance) {
    return Scalar(1) / static_cast<Scalar>(std::uint64_t{1} << (distance + 1));
  };

  if (!inverse) {
    for (int s = width - 1; s >= 0; --s) {
      detail::hadamard_on_bit<Scalar>(a, offset + s);
      for (int r = s - 1; r >= 0; --r) {
        detail::controlled_phase_on_bits<Scalar>(a, offset + s, offset + r,
                                                 angle(s - r));
      }
    }
    for (int s = 0; s < width / 2; ++s) {
      detail::swap_bits<Scalar>(a, offset + s, offset + width - 1 - s);
    }
  } else {
    for (int s = 0; s < width / 2; ++s) {
      detail::swap_bits<Scalar>(a, offset + s, offset + width - 1 - s);
    }
    for (int s = 0; s < width; ++s) {
      for (int r = 0; r < s; ++r) {
        detail::controlled_phase_on_bits<Scalar>(a, offset + s, offset + r,
                                                 -angle(s - r));
      }
      detail::hadamard_on_bit<Scalar>(a, offset + s);
    }
  }
  return state;
}

/// 2 <pivot|state> pivot - state.
template <typename Scalar>
StateVector<Scalar> reflect_about(StateVector<Scalar> state,
                                  const StateVector<Scalar>& pivot) {
  if (state.dim() != pivot.dim()) {
    throw LayoutError("reflection pivot has a different dimension");
  }
  const std::complex<Scalar> overlap = pivot.amplitudes().dot(state.amplitudes());
  state.amplitudes() = Scalar(2) * overlap * pivot.amplitudes() - state.amplitudes();
  return state;
}

namespace detail {

// (mass with the bit set, total mass) in one pass.
template <typename Scalar>
std::pair<Scalar, Scalar> bit_mass(const StateVector<Scalar>& state, int qubit) {
  const Eigen::Index mask = Eigen::Index{1} << state.layout().basis_bit(qubit);
  const auto& a = state.amplitudes();
  Scalar ones = 0;
  Scalar zeros = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & mask) {
      ones += std::norm(a[i]);
    } else {
      zeros += std::norm(a[i]);
    }
  }
  return {ones, ones + zeros};
}

}  // namespace detail

/// Marginal probability of reading 1 on `qubit`. A qubit carrying the whole
/// mass reports exactly 1.
template <typename Scalar>
Scalar prob_one(const StateVector<Scalar>& state, int qubit) {
  const auto [ones, total] = detail::bit_mass(state, qubit);
  return total > Scalar(0) ? ones / total : Scalar(0);
}

template <typename Scalar>
Scalar prob_zero(const StateVector<Scalar>& state, int qubit) {
  const auto [ones, total] = detail::bit_mass(state, qubit);
  return total > Scalar(0) ? (total - ones) / total : Scalar(0);
}

/**
 * Projects `qubit` onto `outcome` and renormalises. Returns the pre-collapse
 * probability of the outcome; throws ImpossibleOutcomeError when it is at or
 * below kImpossibleOutcome.
 */
template <typename Scalar>
CollapseResult<Scalar> collapse(StateVector<Scalar> state, int qubit, int outcome) {
  if (outcome != 0 && outcome != 1) throw UsageError("outcome must be 0 or 1");
  const Scalar p = outcome ? prob_one(state, qubit) : prob_zero(state, qubit);
  if (p <= Scalar(kImpossibleOutcome)) {
    throw ImpossibleOutcomeError("qubit " + std::to_string(qubit) + " cannot be " +
                                 std::to_string(outcome) + " (probability " +
                                 std::to_string(p) + ")");
  }
  const Eigen::Index mask = Eigen::Index{1} << state.layout().basis_bit(qubit);
  const Scalar scale = Scalar(1) / std::sqrt(p);
  auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const bool set = (i & mask) != 0;
    if (set == (outcome == 1)) {
      a[i] *= scale;
    } else {
      a[i] = Scalar(0);
    }
  }
  return {std::move(state), p};
}

}  // namespace qsubset::qsim
