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

#include "geomgate/characterize.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "geomgate/threading.hpp"

namespace geomgate {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<Eigen::Matrix2cd, 4> pauli_basis() {
  std::array<Eigen::Matrix2cd, 4> p;
  p[0] = Eigen::Matrix2cd::Identity();
  p[1] = pauli_x();
  p[2] = pauli_y();
  p[3] = pauli_z();
  return p;
}

Eigen::Matrix2cd ketbra(int j, int k) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(j, k) = 1.0;
  return m;
}

}  // namespace

Channel unitary_channel(const Matrix& u) {
  Eigen::Matrix2cd m = u;
  return [m](const Eigen::Matrix2cd& rho) -> Eigen::Matrix2cd {
    return m * rho * m.adjoint();
  };
}

Channel depolarized_channel(const Matrix& u, double q) {
  Eigen::Matrix2cd m = u;
  return [m, q](const Eigen::Matrix2cd& rho) -> Eigen::Matrix2cd {
    const Eigen::Matrix2cd out = m * rho * m.adjoint();
    return (1.0 - q) * out + q * 0.5 * out.trace() * Eigen::Matrix2cd::Identity();
  };
}

ProcessMatrix qpt(const Channel& channel, double psd_tol) {
  // Outputs on the four canonical inputs give E(|j><k|) by linearity.
  Eigen::Vector2cd zero(1, 0), one(0, 1);
  Eigen::Vector2cd plus = (zero + one) / std::numbers::sqrt2;
  Eigen::Vector2cd plus_i = (zero + cxd(0, 1) * one) / std::numbers::sqrt2;

  const Eigen::Matrix2cd e00 = channel(zero * zero.adjoint());
  const Eigen::Matrix2cd e11 = channel(one * one.adjoint());
  const Eigen::Matrix2cd ep = channel(plus * plus.adjoint());
  const Eigen::Matrix2cd ei = channel(plus_i * plus_i.adjoint());

  // |+><+| = (E00 + E01 + E10 + E11)/2, |+i><+i| = (E00 - iE01 + iE10 + E11)/2
  const Eigen::Matrix2cd sum = 2.0 * ep - e00 - e11;        // E(|0><1|) + E(|1><0|)
  const Eigen::Matrix2cd isum = 2.0 * ei - e00 - e11;       // -iE(|0><1|) + iE(|1><0|)
  const Eigen::Matrix2cd e01 = 0.5 * (sum + cxd(0, 1) * isum);
  const Eigen::Matrix2cd e10 = 0.5 * (sum - cxd(0, 1) * isum);

  const Eigen::Matrix2cd ejk[2][2] = {{e00, e01}, {e10, e11}};
  const auto paulis = pauli_basis();

  // Solve E(|j><k|)_{ab} = sum_{mn} chi_{mn} (P_m |j><k| P_n)_{ab}.
  Eigen::Matrix<cxd, 16, 16> basis;
  Eigen::Matrix<cxd, 16, 1> rhs;
  int row = 0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          rhs(row) = ejk[j][k](a, b);
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
              basis(row, 4 * m + n) = (paulis[m] * ketbra(j, k) * paulis[n])(a, b);
          ++row;
        }
  const Eigen::Matrix<cxd, 16, 1> x = basis.fullPivLu().solve(rhs);

  ProcessMatrix out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out.chi(m, n) = x(4 * m + n);
  out.chi = 0.5 * (out.chi + out.chi.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(out.chi);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw UnphysicalChannel("chi eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  return out;
}

ProcessMatrix ideal_chi(const Matrix& u) {
  const auto paulis = pauli_basis();
  Eigen::Vector4cd v;
  for (int m = 0; m < 4; ++m) v(m) = 0.5 * (paulis[m].adjoint() * u).trace();
  ProcessMatrix out;
  out.chi = v * v.adjoint();
  return out;
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  return (a.chi * b.chi).trace().real();
}

const std::array<Matrix, 24>& clifford_group() {
  static const std::array<Matrix, 24> group = [] {
    const Matrix x90 = mat_exp(pauli_x(), kPi / 4).m;
    const Matrix x90m = mat_exp(pauli_x(), -kPi / 4).m;
    const Matrix x180 = mat_exp(pauli_x(), kPi / 2).m;
    const Matrix y90 = mat_exp(pauli_y(), kPi / 4).m;
    const Matrix y90m = mat_exp(pauli_y(), -kPi / 4).m;
    const Matrix y180 = mat_exp(pauli_y(), kPi / 2).m;
    const Matrix i2 = identity(2);
    // standard 24-word decomposition over the half/full pi generator set
    const std::array<std::vector<Matrix>, 24> words = {{
        {i2},
        {x180},
        {y180},
        {y180, x180},
        {x90, y90},
        {x90, y90m},
        {x90m, y90},
        {x90m, y90m},
        {y90, x90},
        {y90, x90m},
        {y90m, x90},
        {y90m, x90m},
        {x90},
        {x90m},
        {y90},
        {y90m},
        {x90m, y90, x90},
        {x90m, y90m, x90},
        {x180, y90},
        {x180, y90m},
        {y180, x90},
        {y180, x90m},
        {x90, y90, x90},
        {x90m, y90, x90m},
    }};
    std::array<Matrix, 24> g;
    for (int i = 0; i < 24; ++i) {
      Matrix u = identity(2);
      for (const Matrix& w : words[i]) u = w * u;
      g[i] = u;
    }
    return g;
  }();
  return group;
}

namespace {

int nearest_clifford(const Matrix& u) {
  const auto& group = clifford_group();
  int best = 0;
  double best_f = -1;
  for (int i = 0; i < 24; ++i) {
    const double f = gate_fidelity(group[i], u);
    if (f > best_f) {
      best_f = f;
      best = i;
    }
  }
  return best;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RBResult rb_run(const RBConfig& config) {
  if (config.lengths.size() < 2) throw Error("need at least 2 sequence lengths");
  if (config.sequences_per_length < 10) throw Error("need at least 10 sequences per length");
  const auto& group = clifford_group();

  RBResult out;
  out.lengths = config.lengths;
  out.sequence_fidelities.assign(config.lengths.size(), 0.0);

  std::vector<std::vector<double>> survivals(config.lengths.size());
  for (auto& v : survivals) v.assign(config.sequences_per_length, 0.0);

  const Eigen::Matrix2cd rho0 = ketbra(0, 0);
  parallel_for(config.lengths.size() * config.sequences_per_length, [&](std::size_t job) {
    const std::size_t li = job / config.sequences_per_length;
    const std::size_t si = job % config.sequences_per_length;
    const int m = config.lengths[li];
    std::mt19937_64 rng(splitmix(config.seed ^ splitmix(job + 1)));
    std::uniform_int_distribution<int> pick(0, 23);

    Eigen::Matrix2cd rho = rho0;
    Matrix ideal_product = identity(2);
    for (int step = 0; step < m; ++step) {
      const int c = pick(rng);
      rho = group[c] * rho * group[c].adjoint();
      if (config.depolarizing > 0)
        rho = (1.0 - config.depolarizing) * rho +
              config.depolarizing * 0.5 * rho.trace() * Eigen::Matrix2cd::Identity();
      ideal_product = group[c] * ideal_product;
      if (config.interleaved) {
        const Matrix& g = *config.interleaved;
        rho = (g * rho * g.adjoint()).eval();
        ideal_product =
            (config.interleaved_ideal ? *config.interleaved_ideal : g) * ideal_product;
      }
    }
    const Matrix recovery = group[nearest_clifford(ideal_product.adjoint())];
    rho = recovery * rho * recovery.adjoint();
    survivals[li][si] = (rho0 * rho).trace().real();
  });

  for (std::size_t li = 0; li < config.lengths.size(); ++li) {
    double s = 0;
    for (double v : survivals[li]) s += v;
    out.sequence_fidelities[li] = s / config.sequences_per_length;
  }

  // Fit A p^m + B: linear least squares in (A, B) for fixed p, golden scan on p.
  auto sse = [&](double p, double* a_out, double* b_out) {
    double sxx = 0, sx = 0, sxy = 0, sy = 0, n = 0;
    for (std::size_t i = 0; i < out.lengths.size(); ++i) {
      const double x = std::pow(p, out.lengths[i]);
      const double y = out.sequence_fidelities[i];
      sxx += x * x;
      sx += x;
      sxy += x * y;
      sy += y;
      n += 1;
    }
    const double det = n * sxx - sx * sx;
    double a, b;
    if (std::abs(det) < 1e-15) {
      a = 0;
      b = sy / n;
    } else {
      a = (n * sxy - sx * sy) / det;
      b = (sy * sxx - sx * sxy) / det;
    }
    if (a_out) *a_out = a;
    if (b_out) *b_out = b;
    double e = 0;
    for (std::size_t i = 0; i < out.lengths.size(); ++i) {
      const double r = a * std::pow(p, out.lengths[i]) + b - out.sequence_fidelities[i];
      e += r * r;
    }
    return e;
  };

  // Constant survival data leaves p unidentifiable; report the lossless decay.
  double fmin = out.sequence_fidelities[0], fmax = fmin;
  for (double v : out.sequence_fidelities) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  if (fmax - fmin < 1e-12) {
    out.decay_p = 1.0;
    out.offset = 0.5;
    out.amplitude = 0.5 * (fmin + fmax) - out.offset;
    out.avg_gate_fidelity = 1.0;
    return out;
  }

  double best_p = 1.0, best_e = sse(1.0, nullptr, nullptr);
  for (int i = 0; i <= 1000; ++i) {
    const double p = 1e-4 + (1.0 - 1e-4) * i / 1000.0;
    const double e = sse(p, nullptr, nullptr);
    if (e < best_e) {
      best_e = e;
      best_p = p;
    }
  }
  double lo = std::max(1e-4, best_p - 1e-3), hi = std::min(1.0, best_p + 1e-3);
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + 0.381966 * (hi - lo);
    const double m2 = hi - 0.381966 * (hi - lo);
    if (sse(m1, nullptr, nullptr) > sse(m2, nullptr, nullptr))
      lo = m1;
    else
      hi = m2;
  }
  out.decay_p = 0.5 * (lo + hi);
  sse(out.decay_p, &out.amplitude, &out.offset);
  if (!(out.decay_p > 0.0) || out.decay_p > 1.0 + 1e-12)
    throw FitFailure("decay p = " + std::to_string(out.decay_p));
  out.decay_p = std::min(out.decay_p, 1.0);
  out.avg_gate_fidelity = 1.0 - 0.5 * (1.0 - out.decay_p);
  return out;
}

}  // namespace geomgate
