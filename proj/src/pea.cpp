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

#include "qsubset/pea.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "qsubset/errors.hpp"
#include "qsubset/qsim/ops.hpp"

namespace qsubset {

namespace {

constexpr double kClearedTolerance = 1e-12;

// (phase * 2^shift) mod 2^bits, as turns.
double scaled_turns(std::uint64_t phase, int shift, int bits) {
  const unsigned __int128 wide = static_cast<unsigned __int128>(phase) << shift;
  const unsigned __int128 modulus = static_cast<unsigned __int128>(1) << bits;
  return std::ldexp(static_cast<double>(wide % modulus), -bits);
}

void check_cleared(const qsim::StateVectord& state) {
  const auto& layout = state.layout();
  const int offset = layout.bit_offset(kPhaseSegment);
  double stray = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if ((static_cast<std::uint64_t>(i) >> offset) != 0) stray += std::norm(state[i]);
  }
  if (stray > kClearedTolerance) {
    throw PreconditionError("phase register is not |0...0> (stray probability " +
                            std::to_string(stray) + ")");
  }
}

}  // namespace

std::string_view to_string(PeaBackend backend) {
  return backend == PeaBackend::kCircuit ? "circuit" : "direct";
}

PeaBackend parse_pea_backend(std::string_view text) {
  if (text == "circuit") return PeaBackend::kCircuit;
  if (text == "direct") return PeaBackend::kDirect;
  throw ParseError("unknown PEA backend '" + std::string(text) + "'");
}

qsim::RegisterLayout pea_layout(int phase_bits, int index_bits) {
  return qsim::RegisterLayout(
      {{std::string(kPhaseSegment), phase_bits, qsim::BitOrder::kMsbFirst},
       {std::string(kIndexSegment), index_bits, qsim::BitOrder::kLsbFirst}});
}

qsim::StateVectord prepare_initial(int phase_bits, int index_bits, int qubit_limit) {
  if (phase_bits < 1 || index_bits < 1) {
    throw UsageError("both registers need at least one qubit");
  }
  if (phase_bits + index_bits > qubit_limit) {
    throw CapacityError(std::to_string(phase_bits + index_bits) +
                        " qubits exceed the simulator limit of " +
                        std::to_string(qubit_limit));
  }
  auto zero = qsim::init_basis_state<double>(pea_layout(phase_bits, index_bits), 0);
  return qsim::apply_hadamard_layer(std::move(zero), kIndexSegment);
}

bool phases_exact(const PhaseOracle& oracle, int register_bits) {
  const int drop = oracle.precision_bits() - register_bits;
  if (drop <= 0) return true;
  const std::uint64_t mask = (std::uint64_t{1} << drop) - 1;
  for (auto phase : oracle.eigenphases()) {
    if (phase & mask) return false;
  }
  return true;
}

qsim::StateVectord run_pea(qsim::StateVectord state, const PhaseOracle& oracle,
                           PeaBackend backend) {
  const qsim::RegisterLayout layout = state.layout();
  const int width = layout.segment(kPhaseSegment).num_qubits;
  if (layout.segment(kIndexSegment).num_qubits != oracle.n()) {
    throw LayoutError("index register width differs from the oracle's element count");
  }
  check_cleared(state);
  const int m = oracle.precision_bits();
  const auto phases = oracle.eigenphases();
  const bool exact = phases_exact(oracle, width);

  if (backend == PeaBackend::kDirect) {
    if (!exact) {
      throw PrecisionError("direct PEA needs phases exact at " + std::to_string(width) +
                           " bits");
    }
    const int index_bits = oracle.n();
    auto amplitudes = qsim::StateVectord::Amplitudes::Zero(state.dim()).eval();
    for (std::uint64_t j = 0; j < phases.size(); ++j) {
      // phase in units of 2^-width
      const std::uint64_t bin =
          width >= m ? phases[j] << (width - m) : phases[j] >> (m - width);
      amplitudes[static_cast<Eigen::Index>((bin << index_bits) | j)] =
          state[static_cast<Eigen::Index>(j)];
    }
    state.amplitudes() = std::move(amplitudes);
    return state;
  }

  if (!exact) {
    std::clog << "warning: eigenphases are not exact at " << width
              << " bits; phase estimation will spread probability\n";
  }
  state = qsim::apply_hadamard_layer(std::move(state), kPhaseSegment);
  for (int q = 0; q < width; ++q) {
    // qubit q carries weight 2^(width-1-q) and controls U^(2^(width-1-q))
    const int power = width - 1 - q;
    state = qsim::apply_controlled_phase_diagonal(
        std::move(state), layout.qubit(kPhaseSegment, q), kIndexSegment,
        [&](std::uint64_t j) { return scaled_turns(phases[j], power, m); });
  }
  return qsim::apply_qft(std::move(state), kPhaseSegment, /*inverse=*/true);
}

}  // namespace qsubset
