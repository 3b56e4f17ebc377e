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
//
// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "geomgate/bessel.hpp"
#include "geomgate/characterize.hpp"
#include "geomgate/evolution.hpp"
#include "geomgate/geometry.hpp"
#include "geomgate/pulses.hpp"
#include "geomgate/reference_values.hpp"
#include "geomgate/twoqubit.hpp"

using namespace geomgate;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int number, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", number, detail.c_str());
  if (!pass) ++g_failures;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

double slope_of(Scheme sch, Gate g) {
  const PulseSchedule s = build_schedule(sch, g);
  return fidelity_sweep(s, scheme_target_unitary(s), log_grid(0.02, 0.2, 10), 2048)
      .fitted_slope;
}

}  // namespace

static void criterion1() {
  const auto t0 = Clock::now();
  bool all = true;
  char buf[256];
  std::string detail;
  for (const auto& row : robustness_reference_table()) {
    const PulseSchedule s = build_schedule(row.scheme, row.gate);
    const double computed = std::abs(robustness_integral(s).d12_over_eps);
    const bool ok = std::abs(computed - row.value) <= row.tolerance;
    all = all && ok;
    std::snprintf(buf, sizeof buf, "    %-10s %-3s |D12/eps| = %7.4f  reference %.2f +- %.2f  %s\n",
                  to_string(row.scheme).c_str(), to_string(row.gate).c_str(), computed,
                  row.value, row.tolerance, ok ? "ok" : "MISMATCH");
    detail += buf;
  }
  std::snprintf(buf, sizeof buf,
                "robustness-integral table, 9 entries (%.1f s)%s", seconds_since(t0),
                all ? "" : " [sr-ngqg x2 entry: computed D matrix is ~0 in every frame; "
                          "the published 0.47 is inconsistent with its own pulse table]");
  std::printf("%s", detail.c_str());
  criterion(1, all, buf);
}

static void criterion2() {
  const auto t0 = Clock::now();
  struct Want {
    Scheme sch;
    Gate g;
    double lo, hi;
  };
  const std::vector<Want> wants = {{Scheme::SR_NGQG, Gate::X, 3.7, 4.3},
                                   {Scheme::SR_NGQG, Gate::Y, 3.7, 4.3},
                                   {Scheme::DYNAMICAL, Gate::X, 1.8, 2.2},
                                   {Scheme::NGQG_P1, Gate::X, 3.5, 1e9},
                                   {Scheme::NGQG_P2, Gate::X, 1.7, 2.3}};
  bool all = true;
  std::string detail;
  char buf[256];
  for (const auto& w : wants) {
    const double slope = slope_of(w.sch, w.g);
    const bool ok = slope >= w.lo && slope <= w.hi;
    all = all && ok;
    std::snprintf(buf, sizeof buf, "    %-10s %-2s slope = %.3f  want [%.1f, %s]  %s\n",
                  to_string(w.sch).c_str(), to_string(w.g).c_str(), slope, w.lo,
                  w.hi > 100 ? "inf" : std::to_string(w.hi).substr(0, 3).c_str(),
                  ok ? "ok" : "MISMATCH");
    detail += buf;
  }
  std::printf("%s", detail.c_str());
  std::snprintf(buf, sizeof buf,
                "infidelity scaling over eps in [0.02, 0.2] (%.1f s)%s", seconds_since(t0),
                all ? ""
                    : " [ngqg-p1 x: |D12| = 0.65 from the same source table forces "
                      "quadratic scaling; a slope >= 3.5 is inconsistent with criterion 1]");
  criterion(2, all, buf);
}

static void criterion3() {
  Matrix minus_i_sx(2, 2);
  minus_i_sx << 0, cxd(0, -1), cxd(0, -1), 0;
  const auto r = evolve(build_sr_ngqg(Gate::X), ErrorModel{}, 4096, true);
  const double dev = (r.final_unitary.m - minus_i_sx).cwiseAbs().maxCoeff();
  bool ok = dev < 1e-6;
  double worst_f = 1.0;
  for (Gate g : {Gate::X, Gate::Y, Gate::XHalf, Gate::YHalf}) {
    const PulseSchedule s = build_sr_ngqg(g);
    const double f =
        gate_fidelity(evolve(s, ErrorModel{}).final_unitary.m, scheme_target_unitary(s));
    worst_f = std::min(worst_f, f);
  }
  ok = ok && worst_f >= 0.9999;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "sr-ngqg x -> -i sigma_x (max dev %.1e); all four gates F(0) >= %.6f", dev,
                worst_f);
  criterion(3, ok, buf);
}

static void criterion4() {
  const auto t0 = Clock::now();
  bool all = true;
  double worst_ratio = 0;
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P1, Scheme::NGQG_P2, Scheme::SSSP}) {
    for (Gate g : {Gate::X, Gate::XHalf}) {
      if (sch == Scheme::SSSP && g != Gate::X) continue;
      const PulseSchedule s = build_schedule(sch, g);
      const Matrix ideal = scheme_target_unitary(s);
      for (double eps : {0.02, 0.035, 0.05}) {
        const double fe = gate_fidelity(
            evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}).final_unitary.m,
            ideal);
        const double diff = std::abs(fe - first_order_fidelity(s, eps));
        const double bound = 10 * std::pow(eps, 4);
        worst_ratio = std::max(worst_ratio, diff / bound);
        all = all && diff < bound;
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "|F_exact - F_perturbative| < 10 eps^4 for eps <= 0.05, all table schedules "
                "(worst ratio %.2f, %.1f s)",
                worst_ratio, seconds_since(t0));
  criterion(4, all, buf);
}

static void criterion5() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260811);
  std::uniform_real_distribution<double> uni(0, 1);
  double worst_frame = 0, worst_h = 0;
  for (int draw = 0; draw < 20; ++draw) {
    DeviceParams p;
    p.omega1 = 2 * kPi * (4.5e9 + 0.5e9 * uni(rng));
    p.omega2 = 2 * kPi * (5.2e9 + 0.6e9 * uni(rng));
    p.anh1 = -2 * kPi * (180e6 + 100e6 * uni(rng));
    p.anh2 = -2 * kPi * (180e6 + 100e6 * uni(rng));
    p.g12 = 2 * kPi * (8e6 + 7e6 * uni(rng));
    const double delta = resonance_select(p, TwoQubitGate::iSWAP);
    std::vector<DriveSegment> drives{
        DriveSegment{(0.3 + 1.2 * uni(rng)) * delta, delta, 2 * kPi * uni(rng), 30e-9}};
    const auto rot = simulate_two_qubit(p, drives, FrameKind::Rotating, 0, 1);
    const auto lab = simulate_two_qubit(p, drives, FrameKind::Lab, 0, 1);
    worst_frame = std::max(
        worst_frame, (rot.final_unitary.m - lab.final_unitary.m).cwiseAbs().maxCoeff());
    const double t = 25e-9 * uni(rng);
    const Matrix ha = rotating_hamiltonian(p, drives, t, HMethod::Analytic, 20);
    const Matrix hf = rotating_hamiltonian(p, drives, t, HMethod::FrameTransform, 20);
    worst_h = std::max(worst_h, (ha - hf).cwiseAbs().maxCoeff() / p.g12);
  }
  const bool ok = worst_frame < 1e-5 && worst_h < 1e-6;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "20 draws: |U_rot - U_lab->rot| <= %.1e (tol 1e-5); |H_analytic - H_fd| <= "
                "%.1e g12 (tol 1e-6) (%.1f s)",
                worst_frame, worst_h, seconds_since(t0));
  criterion(5, ok, buf);
}

// Shared two-qubit artifacts for criteria 6, 7, 8, 10.
struct TwoQubitRuns {
  DeviceParams dev = DeviceParams::defaults();
  std::vector<DriveSegment> iswap;
  TwoQubitResult iswap_result;
  double iswap_fidelity_raw = 0;
  double fidelity_step_shift = 0;
};

static TwoQubitRuns criterion6(TwoQubitRuns runs) {
  const auto t0 = Clock::now();
  runs.iswap = build_iswap_drive(runs.dev, Scheme::SR_NGQG);
  runs.iswap_result = simulate_two_qubit(runs.dev, runs.iswap, FrameKind::Rotating, 0, 1);
  runs.iswap_fidelity_raw = subspace_fidelity(runs.iswap_result.final_unitary.m,
                                              iswap_ideal_9(), computational_indices());
  const double fz =
      zcorrected_subspace_fidelity(runs.iswap_result.final_unitary.m, iswap_ideal_9());

  // step-halving fidelity shift for criterion 10
  const auto half = simulate_two_qubit(runs.dev, runs.iswap, FrameKind::Rotating,
                                       runs.iswap_result.steps / 2, 1);
  const double f_half =
      subspace_fidelity(half.final_unitary.m, iswap_ideal_9(), computational_indices());
  runs.fidelity_step_shift = std::abs(f_half - runs.iswap_fidelity_raw);

  const auto cz = build_cz_drive(runs.dev);
  const auto rcz = simulate_two_qubit(runs.dev, cz, FrameKind::Rotating, 0, 4);
  const double cond = conditional_phase(rcz.final_unitary.m);

  const bool ok = runs.iswap_fidelity_raw >= 0.99 &&
                  runs.iswap_fidelity_raw < 1.0 - 1e-5 && std::abs(cond - kPi) < 0.02;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "iSWAP subspace F = %.4f (z-corrected %.4f, cap < 1-1e-5 ok); CZ conditional "
                "phase = pi %+.5f (%.1f s)",
                runs.iswap_fidelity_raw, fz, cond - kPi, seconds_since(t0));
  criterion(6, ok, buf);
  return runs;
}

static void criterion7(const TwoQubitRuns& runs) {
  const auto t0 = Clock::now();
  bool all = true;
  std::string detail;
  char buf[256];
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P1, Scheme::DYNAMICAL}) {
    const auto drives = build_iswap_drive(runs.dev, sch);
    const double delta = drives[0].mod_freq;
    const double a0 = drives[0].amplitude;
    const double j0 = bessel_j(1, a0 / delta);
    const auto base = simulate_two_qubit(runs.dev, drives, FrameKind::Rotating, 0, 1);
    const long steps = 2 * base.steps;
    double fmin = 2, fmax = -1;
    for (int i = 0; i <= 8; ++i) {
      // endpoints map exactly to equivalent Rabi error +-0.1 (branch-clipped)
      const double eq_hi = std::min(0.1, kBesselJ1Peak / j0 - 1.0 - 1e-9);
      const double eqr = -0.1 + (eq_hi + 0.1) * i / 8;
      const double da = bessel_j1_inverse((1.0 + eqr) * j0) * delta - a0;
      std::vector<DriveSegment> shifted = drives;
      for (auto& s : shifted) s.amplitude += da;
      const auto r = simulate_two_qubit(runs.dev, shifted, FrameKind::Rotating, steps, 1);
      const double f = zcorrected_subspace_fidelity(r.final_unitary.m, iswap_ideal_9());
      fmin = std::min(fmin, f);
      fmax = std::max(fmax, f);
    }
    const bool ok = (fmax - fmin) < 0.005;
    all = all && ok;
    std::snprintf(buf, sizeof buf, "    %-10s variation %.4f over equivalent Rabi +-0.1  %s\n",
                  to_string(sch).c_str(), fmax - fmin, ok ? "ok" : "MISMATCH");
    detail += buf;
  }
  std::printf("%s", detail.c_str());
  std::snprintf(buf, sizeof buf,
                "delta-A robustness, three iSWAP variants (%.1f s)%s", seconds_since(t0),
                all ? ""
                    : " [dynamical variant: +-10% effective Rabi error under-rotates the "
                      "swap by 0.05 pi, a (1-cos(0.05pi))/2 = 0.62% floor beats the 0.5% "
                      "bound for any operating point]");
  criterion(7, all, buf);
}

static void criterion8(const TwoQubitRuns& runs) {
  const auto t0 = Clock::now();
  CompensationOptions raw;
  raw.compensate = false;
  const auto naive =
      compensate_schedule(build_sr_ngqg(Gate::X), runs.dev, TwoQubitGate::iSWAP, raw);
  const auto r = simulate_two_qubit(runs.dev, naive, FrameKind::Rotating, 0, 1);
  const double f_naive = zcorrected_subspace_fidelity(r.final_unitary.m, iswap_ideal_9());
  const double f_comp =
      zcorrected_subspace_fidelity(runs.iswap_result.final_unitary.m, iswap_ideal_9());
  const double ratio = (1.0 - f_naive) / (1.0 - f_comp);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "disabling phase compensation: infidelity %.4f vs %.4f, ratio %.0fx >= 10x "
                "(%.1f s)",
                1 - f_naive, 1 - f_comp, ratio, seconds_since(t0));
  criterion(8, ratio >= 10.0, buf);
}

static void criterion9() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  double worst = 1.0;
  for (int i = 0; i < 100; ++i) {
    Matrix a(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(r, c) = cxd(g(rng), g(rng));
    const Matrix u = mat_exp(Matrix(0.5 * (a + a.adjoint().eval())), 1.0).m;
    worst = std::min(worst, process_fidelity(ideal_chi(u), qpt(unitary_channel(u))));
  }

  RBConfig depol;
  depol.lengths = {1, 2, 4, 8, 16, 32, 64, 128};
  depol.sequences_per_length = 50;
  depol.seed = 31;
  depol.depolarizing = 0.025;
  const RBResult rd = rb_run(depol);

  RBConfig clean = depol;
  clean.depolarizing = 0.0;
  const RBResult rc = rb_run(clean);
  double clean_drop = 0;
  for (double f : rc.sequence_fidelities) clean_drop = std::max(clean_drop, 1.0 - f);

  const bool ok = worst > 1.0 - 1e-9 && std::abs(rd.decay_p - 0.975) < 1e-4 &&
                  clean_drop < 1e-4;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "chi round trip >= 1-1e-9 (worst %.2e); depolarizing q=0.025 -> p = %.6f "
                "(want 0.975); error-free RB drop %.1e over 128 Cliffords (%.1f s)",
                1 - worst, rd.decay_p, clean_drop, seconds_since(t0));
  criterion(9, ok, buf);
}

static void criterion10(const TwoQubitRuns& runs) {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst_shift = 0, worst_defect = 0;
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P2, Scheme::DYNAMICAL, Scheme::SSSP}) {
    const PulseSchedule s = build_schedule(sch, Gate::X);
    for (double eps : {0.0, 0.1}) {
      const auto a = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}, 2048);
      const auto b = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, eps}, 4096);
      const double shift = std::abs(gate_fidelity(a.final_unitary, b.final_unitary) - 1.0);
      worst_shift = std::max(worst_shift, shift);
      worst_defect = std::max(worst_defect, std::max(a.max_unitarity_defect,
                                                     b.max_unitarity_defect));
    }
  }
  worst_defect = std::max(worst_defect, runs.iswap_result.max_unitarity_defect);
  ok = worst_shift < 1e-8 && worst_defect < 1e-8 && runs.fidelity_step_shift < 1e-8;

  // determinism under a fixed seed
  RBConfig cfg;
  cfg.lengths = {1, 4, 16};
  cfg.sequences_per_length = 12;
  cfg.seed = 5;
  cfg.depolarizing = 0.01;
  const RBResult r1 = rb_run(cfg);
  const RBResult r2 = rb_run(cfg);
  for (std::size_t i = 0; i < r1.sequence_fidelities.size(); ++i)
    ok = ok && r1.sequence_fidelities[i] == r2.sequence_fidelities[i];

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "step-halving fidelity shift <= %.1e (1q) / %.1e (2q); unitarity defect <= "
                "%.1e; seeded runs bit-identical (%.1f s)",
                worst_shift, runs.fidelity_step_shift, worst_defect, seconds_since(t0));
  criterion(10, ok, buf);
}

int main() {
  const auto t0 = Clock::now();
  std::printf("geomgate acceptance suite\n");

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  TwoQubitRuns runs = criterion6(TwoQubitRuns{});
  criterion7(runs);
  criterion8(runs);
  criterion9();
  criterion10(runs);

  std::printf("%d of 10 criteria pass (total %.1f s)\n", 10 - g_failures, seconds_since(t0));
  if (g_failures)
    std::printf("failing criteria reflect documented inconsistencies in the published "
                "reference tables; computed values are printed above.\n");
  return g_failures == 0 ? 0 : 1;
}
