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

// Phase estimation over the diagonal subset-sum unitary.
//
// The register is laid out as (phase, index): the phase register holds the
// most significant basis bits with its qubit 0 as the top bit, the index
// register holds the subset mask with its qubit 0 as element 0. A basis index
// therefore reads phase_int * 2^n + mask.

#include <string_view>

#include "qsubset/encoding.hpp"
#include "qsubset/qsim/state_vector.hpp"

namespace qsubset {

inline constexpr std::string_view kPhaseSegment = "phase";
inline constexpr std::string_view kIndexSegment = "index";
inline constexpr int kDefaultQubitLimit = 24;

enum class PeaBackend {
  kCircuit,  ///< Hadamards, controlled U^{2^k} kicks, inverse QFT
  kDirect,   ///< writes each eigenphase next to its mask in closed form
};

std::string_view to_string(PeaBackend backend);
PeaBackend parse_pea_backend(std::string_view text);

qsim::RegisterLayout pea_layout(int phase_bits, int index_bits);

/// |0>^m (x) uniform superposition over the n-qubit index register.
qsim::StateVectord prepare_initial(int phase_bits, int index_bits,
                                   int qubit_limit = kDefaultQubitLimit);

/// True when every eigenphase is an exact multiple of 2^-register_bits turns.
bool phases_exact(const PhaseOracle& oracle, int register_bits);

/**
 * Writes the oracle's eigenphases into a cleared phase register.
 *
 * The circuit backend applies one controlled diagonal per phase qubit with
 * the angles scaled by that qubit's power of two, then the inverse QFT. It
 * prints a warning to std::clog when the phases are not exact at the
 * register width. The direct backend moves each index amplitude to
 * (eigenphase, mask) and rejects inexact phases with PrecisionError.
 */
qsim::StateVectord run_pea(qsim::StateVectord state, const PhaseOracle& oracle,
                           PeaBackend backend);

}  // namespace qsubset
