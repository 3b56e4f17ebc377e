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

#include "geomgate/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace geomgate {

double UnitaryMatrix::defect() const { return unitarity_defect(m); }

UnitaryMatrix UnitaryMatrix::checked(Matrix u, double tol) {
  UnitaryMatrix out{std::move(u)};
  const double d = out.defect();
  if (!(d < tol)) {
    throw Error("unitarity defect " + std::to_string(d) + " exceeds tolerance " +
                std::to_string(tol));
  }
  return out;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

bool is_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, h.cwiseAbs().maxCoeff());
}

double unitarity_defect(const Matrix& u) {
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

UnitaryMatrix mat_exp(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw DimensionMismatch("mat_exp expects a square matrix");
  if (!all_finite(h)) throw NonHermitianInput("matrix has non-finite entries");
  if (!is_hermitian(h, kAlgebraTol)) throw NonHermitianInput("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  Vector phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) phases(k) = std::exp(cxd(0.0, -ev(k) * t));
  Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return UnitaryMatrix{std::move(u)};
}

double gate_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionMismatch("gate_fidelity dimensions differ");
  const double d = static_cast<double>(u.rows());
  return std::abs((u.adjoint() * v).trace()) / d;
}

double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  return gate_fidelity(u.m, v.m);
}

double subspace_fidelity(const Matrix& u, const Matrix& v, const std::vector<int>& indices) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionMismatch("subspace_fidelity dimensions differ");
  if (indices.empty()) throw IndexOutOfRange("empty index set");
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw IndexOutOfRange("duplicate basis index");
  // Tr(P U† V P) only needs the diagonal of U†V restricted to the subspace.
  const Matrix w = u.adjoint() * v;
  cxd tr = 0.0;
  for (int i : indices) {
    if (i < 0 || i >= w.rows()) throw IndexOutOfRange("basis index " + std::to_string(i));
    tr += w(i, i);
  }
  return std::abs(tr) / static_cast<double>(indices.size());
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::array<double, 3> bloch_coordinates(const Eigen::Vector2cd& psi) {
  const cxd ab = std::conj(psi(0)) * psi(1);
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

}  // namespace geomgate
