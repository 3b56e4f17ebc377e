// Copyright 2026 The geomgate Authors
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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "geomgate/linalg.hpp"

namespace geomgate {

/// Single-qubit channel: density matrix in, density matrix out.
using Channel = std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>;

Channel unitary_channel(const Matrix& u);
/// Depolarizing with probability q composed after the unitary.
Channel depolarized_channel(const Matrix& u, double q);

/// Process matrix in the Pauli operator basis {I, X, Y, Z}.
struct ProcessMatrix {
  Eigen::Matrix4cd chi;
};

/// Linear-inversion tomography from the four canonical inputs
/// {|0>, |1>, |+>, |+i>}. Throws UnphysicalChannel when the reconstructed chi
/// has an eigenvalue below -tol.
ProcessMatrix qpt(const Channel& channel, double psd_tol = 1e-9);

ProcessMatrix ideal_chi(const Matrix& u);
double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

/// The 24 single-qubit Cliffords as generator words over half/full pi
/// rotations (closure-tested).
const std::array<Matrix, 24>& clifford_group();

struct RBConfig {
  std::vector<int> lengths;
  int sequences_per_length = 50;
  std::uint64_t seed = 1;
  double depolarizing = 0.0;            // applied after every Clifford
  std::optional<Matrix> interleaved;    // imperfect target gate, if any
  std::optional<Matrix> interleaved_ideal;  // ideal used for the recovery step
};

struct RBResult {
  std::vector<int> lengths;
  std::vector<double> sequence_fidelities;  // mean survival per length
  double decay_p = 1.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double avg_gate_fidelity = 1.0;
};

/// Randomized benchmarking with exact expectation values (no shot noise) and
/// per-sequence derived seeds, deterministic under any scheduling.
RBResult rb_run(const RBConfig& config);

}  // namespace geomgate
