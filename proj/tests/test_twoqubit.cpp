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
#include <random>

#include "doctest.h"
#include "geomgate/bessel.hpp"
#include "geomgate/evolution.hpp"
#include "geomgate/twoqubit.hpp"

using namespace geomgate;
namespace {
constexpr double kPi = std::numbers::pi;
const DeviceParams kDev = DeviceParams::defaults();
}  // namespace

TEST_CASE("lab-frame Hamiltonian structure") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  DriveSegment idle{0.0, delta, 0.0, 100e-9};
  const Matrix h = lab_hamiltonian(kDev, idle, 10e-9);

  // |11> diagonal carries omega1 + omega2 with no drive
  CHECK(h(4, 4).real() == doctest::Approx(kDev.omega1 + kDev.omega2).epsilon(1e-12));
  // bosonic ladder: <20|H|11> = sqrt(2) g12
  CHECK(std::abs(h(6, 4) - cxd(std::numbers::sqrt2 * kDev.g12, 0)) < 1e-6);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * h.cwiseAbs().maxCoeff());

  // modulated diagonal follows A sin(Delta t + phi) on qubit 1
  DriveSegment driven{0.5 * delta, delta, 0.3, 100e-9};
  const double t = 7e-9;
  const Matrix hd = lab_hamiltonian(kDev, driven, t);
  CHECK(hd(3, 3).real() - h(3, 3).real() ==
        doctest::Approx(0.5 * delta * std::sin(delta * t + 0.3)).epsilon(1e-9));
}

TEST_CASE("accumulated modulation phase, closed form vs quadrature") {
  const double delta = 2 * kPi * 0.5e9;
  std::vector<DriveSegment> drives{DriveSegment{delta, delta, 0.0, kPi / delta},
                                   DriveSegment{0.6 * delta, delta, 1.1, 40e-9}};
  // one segment with A = Delta, phi = 0, duration pi/Delta: Phi = 2
  CHECK(drive_phase_accum({drives[0]}, kPi / delta) == doctest::Approx(2.0).epsilon(1e-12));

  // independent midpoint quadrature, split at the segment boundary
  for (double t : {0.7 * kPi / delta, kPi / delta + 17e-9}) {
    double acc = 0;
    const double edge = std::min(t, kPi / delta);
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double u = edge * (i + 0.5) / n;
      acc += drives[0].amplitude * std::sin(drives[0].mod_freq * u + drives[0].phase) * edge / n;
    }
    if (t > edge) {
      for (int i = 0; i < n; ++i) {
        const double u = edge + (t - edge) * (i + 0.5) / n;
        acc += drives[1].amplitude * std::sin(drives[1].mod_freq * u + drives[1].phase) *
               (t - edge) / n;
      }
    }
    CHECK(drive_phase_accum(drives, t) == doctest::Approx(acc).epsilon(1e-6));
  }
}

TEST_CASE("rotating frame transformation is diagonal and free at A = 0") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  std::vector<DriveSegment> idle{DriveSegment{0.0, delta, 0.0, 50e-9}};
  const double t = 23e-9;
  const Matrix u = rotating_frame_unitary(kDev, idle, t).m;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (i != j) CHECK(std::abs(u(i, j)) == 0.0);
  // bare free-evolution phase on |11>
  const cxd expect = std::polar(1.0, -std::remainder((kDev.omega1 + kDev.omega2) * t, 2 * kPi));
  CHECK(std::abs(u(4, 4) - expect) < 1e-9);
}

TEST_CASE("rotating Hamiltonian: no drive leaves the bare g12 coupling") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  std::vector<DriveSegment> idle{DriveSegment{0.0, delta, 0.0, 50e-9}};
  const Matrix h = rotating_hamiltonian(kDev, idle, 11e-9, HMethod::Analytic, 20);
  // J_m(0) = delta_m0: |10><01| keeps magnitude g12, oscillating at nu(10,01)
  CHECK(std::abs(h(3, 1)) == doctest::Approx(kDev.g12).epsilon(1e-10));
  for (int i = 0; i < 9; ++i) CHECK(std::abs(h(i, i)) < 1e-9);
}

TEST_CASE("analytic and frame-transform routes agree") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int draw = 0; draw < 5; ++draw) {
    DeviceParams p = kDev;
    p.omega1 = 2 * kPi * (4.5e9 + 0.5e9 * uni(rng));
    p.omega2 = 2 * kPi * (5.2e9 + 0.6e9 * uni(rng));
    p.anh1 = -2 * kPi * (180e6 + 100e6 * uni(rng));
    p.anh2 = -2 * kPi * (180e6 + 100e6 * uni(rng));
    p.g12 = 2 * kPi * (8e6 + 7e6 * uni(rng));
    const double delta = resonance_select(p, TwoQubitGate::iSWAP);
    std::vector<DriveSegment> drives{
        DriveSegment{(0.2 + 1.3 * uni(rng)) * delta, delta, 2 * kPi * uni(rng), 80e-9}};
    for (int k = 0; k < 4; ++k) {
      const double t = 75e-9 * uni(rng);
      const Matrix ha = rotating_hamiltonian(p, drives, t, HMethod::Analytic, 20);
      const Matrix hf = rotating_hamiltonian(p, drives, t, HMethod::FrameTransform, 20);
      CHECK((ha - hf).cwiseAbs().maxCoeff() < 1e-6 * p.g12);
      CHECK((ha - ha.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * p.g12);
    }
  }
}

TEST_CASE("cutoff guard") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  std::vector<DriveSegment> drives{DriveSegment{1.5 * delta, delta, 0.0, 50e-9}};
  CHECK_THROWS_AS(rotating_hamiltonian(kDev, drives, 3e-9, HMethod::Analytic, 2), CutoffTooLow);
}

TEST_CASE("resonance selection") {
  CHECK(resonance_select(kDev, TwoQubitGate::iSWAP) ==
        doctest::Approx(kDev.omega2 - kDev.omega1));
  CHECK(resonance_select(kDev, TwoQubitGate::CZ) ==
        doctest::Approx(kDev.omega2 + kDev.anh2 - kDev.omega1));

  DeviceParams degen = kDev;
  degen.omega2 = degen.omega1;
  CHECK(resonance_select(degen, TwoQubitGate::iSWAP) == doctest::Approx(0.0));
  // a zero modulation frequency is rejected by every consumer
  CHECK_THROWS_AS(lab_hamiltonian(degen, DriveSegment{1.0, 0.0, 0.0, 1e-9}, 0.0), Error);
}

TEST_CASE("sideband expansion") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  DriveSegment seg{0.1 * delta, delta, 0.4, 50e-9};
  const SidebandExpansion sb = sideband_expansion(kDev, seg, 20);

  // truncation tail bound honoured
  double tail = 0;
  for (int m = 21; m <= 60; ++m) tail += 2 * std::abs(bessel_j(m, 0.1));
  CHECK(tail < 1e-10);

  // m = 1 coefficient of the |10><01| family has magnitude g12 J1(0.1)
  bool found = false;
  for (const auto& term : sb.terms) {
    if (term.m == 1 && term.from == 1 && term.to == 3) {
      CHECK(std::abs(term.coefficient) ==
            doctest::Approx(kDev.g12 * 0.049937526).epsilon(1e-6));
      // the resonant sideband is static at the iSWAP resonance
      CHECK(std::abs(term.oscillation_freq) < 1e-3);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("compensated drive realizes the target couplings") {
  const PulseSchedule sr = build_sr_ngqg(Gate::X);
  const auto drives = compensate_schedule(sr, kDev, TwoQubitGate::iSWAP);
  REQUIRE(drives.size() == 4);
  for (std::size_t m = 0; m < drives.size(); ++m) {
    const cxd g = effective_coupling(kDev, drives, m, TwoQubitGate::iSWAP);
    // amplitude: uniform coupling at the operating point
    CHECK(std::abs(g) ==
          doctest::Approx(kDev.g12 * bessel_j(1, 1.0)).epsilon(1e-9));
    // phase: back-substitution lands on the single-qubit target exactly
    CHECK(std::abs(std::remainder(std::arg(g) - sr.segments[m].phase, 2 * kPi)) < 1e-9);
    // rotation angle carried by the duration
    CHECK(2 * std::abs(g) * drives[m].duration ==
          doctest::Approx(sr.rotation_angles[m]).epsilon(1e-9));
  }

  // A -> 0 limit: the effective phase offset reduces to the bare -pi/2 frame
  CompensationOptions tiny;
  tiny.drive_ratio = 1e-3;
  const auto d0 = compensate_schedule(sr, kDev, TwoQubitGate::iSWAP, tiny);
  CHECK(std::abs(std::abs(d0[0].frame_phase) - kPi / 2) < 2e-3);

  CompensationOptions too_big;
  too_big.drive_ratio = 2.5;
  CHECK_THROWS_AS(compensate_schedule(sr, kDev, TwoQubitGate::iSWAP, too_big), Error);
}

TEST_CASE("zero drive keeps the computational subspace near identity") {
  const double delta = resonance_select(kDev, TwoQubitGate::iSWAP);
  std::vector<DriveSegment> idle{DriveSegment{1e-6 * delta, delta, 0.0, 60e-9}};
  const auto r = simulate_two_qubit(kDev, idle, FrameKind::Rotating, 0, 1);
  // residual |01> <-> |10> oscillation bounded by the off-resonant Rabi limit
  const double bound = 4.0 * kDev.g12 * kDev.g12 / (delta * delta);
  CHECK(std::norm(r.final_unitary.m(3, 1)) < 1.05 * bound);
  CHECK(std::abs(r.final_unitary.m(1, 1)) > 0.995);
}

TEST_CASE("lab and rotating frames agree on short random drives") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int draw = 0; draw < 2; ++draw) {
    DeviceParams p = kDev;
    p.omega1 = 2 * kPi * (4.6e9 + 0.3e9 * uni(rng));
    p.omega2 = 2 * kPi * (5.3e9 + 0.4e9 * uni(rng));
    p.g12 = 2 * kPi * (9e6 + 5e6 * uni(rng));
    const double delta = resonance_select(p, TwoQubitGate::iSWAP);
    std::vector<DriveSegment> drives{
        DriveSegment{(0.4 + uni(rng)) * delta, delta, 2 * kPi * uni(rng), 25e-9}};
    const auto rot = simulate_two_qubit(p, drives, FrameKind::Rotating, 0, 1);
    const auto lab = simulate_two_qubit(p, drives, FrameKind::Lab, 0, 1);
    CHECK((rot.final_unitary.m - lab.final_unitary.m).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("virtual-Z corrected fidelity") {
  // Z corrections recover a gate differing only by single-qubit phases
  Matrix u = iswap_ideal_9();
  Matrix z = identity(9);
  const double th1 = 0.7, th2 = -1.2;
  for (int i = 0; i < 9; ++i) z(i, i) = std::polar(1.0, (i / 3) * th1 + (i % 3) * th2);
  CHECK(zcorrected_subspace_fidelity(z * u, iswap_ideal_9()) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(zcorrected_subspace_fidelity(u, iswap_ideal_9()) >=
        subspace_fidelity(u, iswap_ideal_9(), computational_indices()) - 1e-12);
}

TEST_CASE("conditional phase bookkeeping") {
  Matrix u = identity(9);
  u(4, 4) = std::polar(1.0, 2.8);
  u(1, 1) = std::polar(1.0, 0.3);
  u(3, 3) = std::polar(1.0, -0.4);
  CHECK(conditional_phase(u) == doctest::Approx(2.8 - 0.3 + 0.4).epsilon(1e-12));
}

TEST_CASE("delta-A sweep guards the Bessel branch") {
  const auto drives = build_iswap_drive(kDev, Scheme::SR_NGQG);
  const double delta = drives[0].mod_freq;
  CHECK_THROWS_AS(delta_a_sweep(kDev, drives, {1.1 * delta}, 2048), BranchExceeded);
}

TEST_CASE("device parameter round trip and guards") {
  const std::string text = serialize_device_params(kDev);
  CHECK(text.find("omega1_hz = 4800000000") != std::string::npos);
  DeviceParams bad = kDev;
  bad.anh1 = std::abs(bad.anh1);
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(kDev.dispersive_ok());
}
