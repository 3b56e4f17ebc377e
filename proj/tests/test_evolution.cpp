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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "geomgate/evolution.hpp"
#include "geomgate/geometry.hpp"

using namespace geomgate;
namespace {
constexpr double kPi = std::numbers::pi;

PulseSchedule scaled_amplitude(PulseSchedule s, double factor) {
  for (auto& seg : s.segments) {
    seg.envelope.amplitude *= factor;
    for (auto& ts : seg.envelope.table) ts.omega *= factor;
  }
  for (double& a : s.rotation_angles) a *= factor;
  return s;
}
}  // namespace

TEST_CASE("evolved noncyclic X equals -i sigma_x") {
  const auto r = evolve(build_sr_ngqg(Gate::X), ErrorModel{}, 4096, true);
  Matrix minus_i_sx(2, 2);
  minus_i_sx << 0, cxd(0, -1), cxd(0, -1), 0;
  CHECK((r.final_unitary.m - minus_i_sx).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(r.max_unitarity_defect < 1e-8);
}

TEST_CASE("error model equals amplitude rescaling") {
  for (const auto& s : {build_sr_ngqg(Gate::X), build_sssp(),
                        build_dynamical_gaussian(Gate::X)}) {
    const double eps = 0.07;
    const auto with_model = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps});
    const auto rescaled = evolve(scaled_amplitude(s, 1.0 + eps), ErrorModel{});
    CHECK(gate_fidelity(with_model.final_unitary, rescaled.final_unitary) > 1.0 - 1e-12);
  }
}

TEST_CASE("step halving leaves every builder's evolution unchanged") {
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P2, Scheme::DYNAMICAL, Scheme::SSSP}) {
    const Gate g = Gate::X;
    const PulseSchedule s = build_schedule(sch, g);
    CHECK_NOTHROW(evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, 0.13}, 2048, true));
  }
}

TEST_CASE("under-resolved phase tables trip the step guard") {
  // 8 coarse samples of a quickly winding phase cannot pass step halving
  PulseSchedule s;
  s.name = "coarse";
  s.scheme = Scheme::SSSP;
  PulseSegment seg;
  seg.duration = 8.0;
  seg.envelope.kind = EnvelopeKind::TableFormula;
  for (int i = 0; i <= 8; ++i)
    seg.envelope.table.push_back(TableSample{i * 1.0, 1.0, 2.3 * i});
  s.segments.push_back(seg);
  s.rotation_angles.push_back(s.segments[0].envelope.area(8.0));
  CHECK_THROWS_AS(evolve(s, ErrorModel{}, 4, true), StepTooCoarse);
}

TEST_CASE("dynamical gate fidelity has the exact rotation-angle form") {
  // A resonant pulse of area (1+eps)pi gives F = |cos(eps pi / 2)| exactly.
  const PulseSchedule s = build_dynamical_gaussian(Gate::X);
  const Matrix ideal = canonical_gate_unitary(Gate::X);
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto r = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps});
    CHECK(gate_fidelity(r.final_unitary.m, ideal) ==
          doctest::Approx(std::abs(std::cos(eps * kPi / 2))).epsilon(1e-9));
  }
  // spec anchor: F(0.1) ~ 1 - (pi^2/8) 0.01
  const auto r = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, 0.1});
  CHECK(gate_fidelity(r.final_unitary.m, ideal) == doctest::Approx(0.98769).epsilon(2e-4));
}

TEST_CASE("sweep slopes") {
  const auto grid = [] {
    std::vector<double> g;
    for (int i = 0; i < 10; ++i) g.push_back(0.02 * std::pow(10.0, i / 9.0));
    return g;
  }();

  const PulseSchedule sr = build_sr_ngqg(Gate::X);
  const SweepResult sw_sr = fidelity_sweep(sr, scheme_target_unitary(sr), grid, 2048);
  CHECK(sw_sr.fitted_slope == doctest::Approx(4.0).epsilon(0.075));
  for (const auto& [eps, fid] : sw_sr.points) {
    CHECK(fid >= 0.0);
    CHECK(fid <= 1.0 + 1e-12);
  }

  const PulseSchedule dyn = build_dynamical_gaussian(Gate::X);
  CHECK(fidelity_sweep(dyn, scheme_target_unitary(dyn), grid, 2048).fitted_slope ==
        doctest::Approx(2.0).epsilon(0.1));

  const PulseSchedule p2 = build_ngqg_reference(Scheme::NGQG_P2, Gate::X);
  CHECK(fidelity_sweep(p2, scheme_target_unitary(p2), grid, 2048).fitted_slope ==
        doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("degenerate fits are rejected") {
  const PulseSchedule s = build_sr_ngqg(Gate::X);
  CHECK_THROWS_AS(
      fidelity_sweep(s, scheme_target_unitary(s), {1e-9, 2e-9, 3e-9}, 512),
      DegenerateFit);
  CHECK_THROWS_AS(
      fidelity_sweep(s, scheme_target_unitary(s), {0.1, 0.1, 0.2}, 512), Error);
}

TEST_CASE("fidelity is continuous in epsilon") {
  const PulseSchedule s = build_ngqg_reference(Scheme::NGQG_P2, Gate::X);
  const Matrix ideal = scheme_target_unitary(s);
  for (double eps : {0.02, 0.1, 0.19}) {
    const double f1 = gate_fidelity(
        evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}).final_unitary.m, ideal);
    const double f2 = gate_fidelity(
        evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps + 1e-3}).final_unitary.m,
        ideal);
    CHECK(std::abs(f2 - f1) < 5e-3);
  }
  // no F(eps) = F(-eps) symmetry is asserted; F(0) instead anchors the sweep
  const double f0 = gate_fidelity(evolve(s, ErrorModel{}).final_unitary.m, ideal);
  CHECK(f0 >= 0.9999);
}

TEST_CASE("fragile-to-robust infidelity ordering at eps = 0.1") {
  const PulseSchedule p1 = build_ngqg_reference(Scheme::NGQG_P1, Gate::X);
  const PulseSchedule p2 = build_ngqg_reference(Scheme::NGQG_P2, Gate::X);
  const ErrorModel e{ErrorModel::Kind::RabiProportional, 0.1};
  const double i1 = 1 - gate_fidelity(evolve(p1, e).final_unitary.m, scheme_target_unitary(p1));
  const double i2 = 1 - gate_fidelity(evolve(p2, e).final_unitary.m, scheme_target_unitary(p2));
  CHECK(i2 / i1 >= 2.9);
  CHECK(i2 / i1 <= 11.7);
}

TEST_CASE("perturbative fidelity") {
  // super-robust X: D vanishes, the perturbative law returns 1
  CHECK(first_order_fidelity(build_sr_ngqg(Gate::X), 0.1) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(first_order_fidelity(build_sr_ngqg(Gate::X), 0.0) == doctest::Approx(1.0));

  // P2 X at eps = 0.05: 1 - (1/4) * 2 * (pi/2 * 0.05)^2
  CHECK(first_order_fidelity(build_ngqg_reference(Scheme::NGQG_P2, Gate::X), 0.05) ==
        doctest::Approx(0.99692).epsilon(2e-5));

  // agreement with the exact evolution to within 10 eps^4 (Eq.-5 validity)
  for (const auto& s :
       {build_ngqg_reference(Scheme::NGQG_P2, Gate::X), build_dynamical_gaussian(Gate::X)}) {
    for (double eps : {0.02, 0.05}) {
      const double fe = gate_fidelity(
          evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}).final_unitary.m,
          scheme_target_unitary(s));
      CHECK(std::abs(fe - first_order_fidelity(s, eps)) < 10 * std::pow(eps, 4));
    }
  }
}

TEST_CASE("first-order expansion bounds the exact propagator") {
  // || U_exact - U0 (1 - i eps M) || = O(eps^2), regression constant frozen
  const PulseSchedule s = build_ngqg_reference(Scheme::NGQG_P2, Gate::X);
  const Matrix u0 = evolve(s, ErrorModel{}).final_unitary.m;
  const RobustnessMatrix m = robustness_matrix(s);
  const Frame f = s.frame.value_or(Frame{0, 0});
  const AuxiliaryFrame xi = auxiliary_frame(f.alpha0, f.lambda0);
  Matrix basis(2, 2);
  basis.col(0) = xi.xi1;
  basis.col(1) = xi.xi2;
  Matrix mmat(2, 2);
  mmat << m.d11, m.d12, m.d21, m.d22;
  const Matrix m_comp = basis * mmat * basis.adjoint();
  for (double eps : {0.05, 0.1}) {
    const Matrix ue =
        evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}).final_unitary.m;
    const Matrix approx = u0 * (identity(2) - cxd(0, eps) * m_comp);
    const double defect = (ue - approx).cwiseAbs().maxCoeff();
    CHECK(defect < 3.0 * eps * eps);  // measured constant ~1.3
  }
}
