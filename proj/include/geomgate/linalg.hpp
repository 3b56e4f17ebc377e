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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "geomgate/errors.hpp"

namespace geomgate {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kAlgebraTol = 1e-10;    // algebraic identities
inline constexpr double kEvolutionTol = 1e-8;   // composed evolutions
inline constexpr double kUnitarityTol = 1e-8;

/// Dense unitary with a validated ||U†U - I||_max bound.
struct UnitaryMatrix {
  Matrix m;

  int dim() const { return static_cast<int>(m.rows()); }
  double defect() const;

  /// Throws NonHermitianInput-style Error if the defect exceeds tol.
  static UnitaryMatrix checked(Matrix u, double tol = kUnitarityTol);
};

bool all_finite(const Matrix& m);
bool is_hermitian(const Matrix& h, double tol = kAlgebraTol);
double unitarity_defect(const Matrix& u);

/// exp(-i H t) for Hermitian H via eigendecomposition (dims <= 9 in practice).
UnitaryMatrix mat_exp(const Matrix& h, double t);

/// F = |Tr(U†V)| / d. Global-phase insensitive; 1 iff U = e^{iθ}V.
double gate_fidelity(const Matrix& u, const Matrix& v);
double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// F = |Tr(P U† V P)| / |indices|, P projecting onto the listed basis states.
double subspace_fidelity(const Matrix& u, const Matrix& v, const std::vector<int>& indices);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(int dim);

Matrix kron(const Matrix& a, const Matrix& b);

/// Bloch coordinates (x, y, z) of a normalized 2-level state.
std::array<double, 3> bloch_coordinates(const Eigen::Vector2cd& psi);

}  // namespace geomgate
