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
// Command-line front end: pulse construction and checks, single- and
// two-qubit simulation, robustness sweeps, tomography/benchmarking, and
// reference-dataset reproduction.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "geomgate/bessel.hpp"
#include "geomgate/characterize.hpp"
#include "geomgate/evolution.hpp"
#include "geomgate/geometry.hpp"
#include "geomgate/pulses.hpp"
#include "geomgate/reference_values.hpp"
#include "geomgate/textio.hpp"
#include "geomgate/threading.hpp"
#include "geomgate/twoqubit.hpp"

using namespace geomgate;

namespace {

constexpr double kPi = std::numbers::pi;

// Exit codes: 0 ok, 1 usage/I-O/parse error, 2 failed physics check.
constexpr int kExitCheckFailed = 2;

struct HzFlag {
  std::string text;
  double value(double fallback) const { return text.empty() ? fallback : parse_double_si(text); }
};

PulseSchedule build_from_flags(const std::string& scheme, const std::string& gate,
                               double omega0_hz, double sigma_ratio) {
  const Scheme s = scheme_from_string(scheme);
  if (s == Scheme::DYNAMICAL)
    return build_dynamical_gaussian(gate_from_string(gate), sigma_ratio, omega0_hz);
  return build_schedule(s, gate_from_string(gate), omega0_hz);
}

std::string csv_header(const std::string& columns) { return columns + "\n"; }

int cmd_pulse_build(const std::string& scheme, const std::string& gate, const HzFlag& omega0,
                    double sigma_ratio, const std::string& out) {
  const PulseSchedule s =
      build_from_flags(scheme, gate, omega0.value(kDefaultOmega0Hz), sigma_ratio);
  save_schedule(out, s);
  std::printf("wrote %s (%zu segments, total duration %.6f / Omega0)\n", out.c_str(),
              s.segments.size(), s.total_duration());
  return 0;
}

int cmd_pulse_check(const std::string& scheme, const std::string& gate, const HzFlag& omega0,
                    bool require_super_robust, double d12_threshold) {
  const PulseSchedule s = build_from_flags(scheme, gate, omega0.value(kDefaultOmega0Hz), 1.0 / 6);
  bool ok = true;
  std::printf("schedule: %s\n", s.name.c_str());

  if (s.scheme == Scheme::SR_NGQG) {
    const PathSpec path = sr_path(s.gate);
    double eq2 = 0;
    const double total = s.total_duration();
    for (int i = 1; i < 10000; ++i) {
      const double t = total * i / 10000.0;
      double om, ph;
      s.sample(t, &om, &ph);
      eq2 = std::max(eq2, std::abs(path.alpha_dot_at(t) - om));
      eq2 = std::max(eq2,
                     std::abs(std::remainder(ph - path.lambda_at(t) - kPi / 2, 2 * kPi)));
    }
    const double eq3 = dynamical_phase_check(path);
    std::printf("  drive-vs-path residual (10^4 grid): %.3e  (tolerance 1e-8)\n", eq2);
    std::printf("  dynamical-phase integral:           %.3e  (tolerance 1e-9)\n", eq3);
    ok = ok && eq2 < 1e-8 && std::abs(eq3) < 1e-9;
  } else {
    std::printf("  drive-vs-path residual:             n/a (no closed-form path)\n");
    std::printf("  dynamical-phase integral:           n/a\n");
  }

  const RobustnessIntegral d = robustness_integral(s);
  std::printf("  D12/eps = (%+.6f, %+.6f)   |D12/eps| = %.6f\n", d.d12_over_eps.real(),
              d.d12_over_eps.imag(), std::abs(d.d12_over_eps));
  std::printf("  D21/eps = (%+.6f, %+.6f)\n", d.d21_over_eps.real(), d.d21_over_eps.imag());
  if (require_super_robust) {
    const bool sr_ok = std::abs(d.d12_over_eps) <= d12_threshold;
    std::printf("  super-robust (|D12/eps| <= %.3f): %s\n", d12_threshold,
                sr_ok ? "yes" : "NO");
    ok = ok && sr_ok;
  }
  std::printf("result: %s\n", ok ? "all checks passed" : "CHECK FAILED");
  return ok ? 0 : kExitCheckFailed;
}

int cmd_simulate(const std::string& schedule_path, double epsilon, int steps) {
  const PulseSchedule s = load_schedule(schedule_path);
  const auto r = evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, epsilon}, steps, true);
  const Matrix target = scheme_target_unitary(s);
  std::printf("schedule: %s   epsilon = %g   steps/segment = %d\n", s.name.c_str(), epsilon,
              steps);
  std::printf("fidelity to scheme target:    %.10f\n",
              gate_fidelity(r.final_unitary.m, target));
  std::printf("fidelity to canonical target: %.10f\n",
              gate_fidelity(r.final_unitary.m, canonical_gate_unitary(s.gate)));
  std::printf("unitarity defect: %.2e\n", r.max_unitarity_defect);
  for (int i = 0; i < 2; ++i)
    std::printf("  [%+.8f%+.8fi  %+.8f%+.8fi]\n", r.final_unitary.m(i, 0).real(),
                r.final_unitary.m(i, 0).imag(), r.final_unitary.m(i, 1).real(),
                r.final_unitary.m(i, 1).imag());
  return 0;
}

int cmd_sweep(const std::string& schedule_path, double eps_min, double eps_max, int points,
              int steps, const std::string& out) {
  const PulseSchedule s = load_schedule(schedule_path);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = points == 1 ? eps_min : eps_min + (eps_max - eps_min) * i / (points - 1);
  const SweepResult r = fidelity_sweep(s, scheme_target_unitary(s), grid, steps);
  std::string csv = csv_header("epsilon,fidelity,infidelity");
  for (const auto& [eps, fid] : r.points)
    csv += fmt_double(eps) + "," + fmt_double(fid) + "," + fmt_double(1 - fid) + "\n";
  atomic_write(out, csv);
  std::printf("schedule %s: fitted log-log infidelity slope = %.3f over eps in [%g, %g]\n",
              s.name.c_str(), r.fitted_slope, r.fit_range.first, r.fit_range.second);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_trajectory(const std::string& schedule_path, double epsilon, int samples,
                   double alpha0, double lambda0, bool scheme_frame, const std::string& out) {
  const PulseSchedule s = load_schedule(schedule_path);
  Frame f{alpha0, lambda0};
  if (scheme_frame && s.frame) f = *s.frame;
  const auto traj = bloch_trajectory(s, f, epsilon, samples);
  std::string csv = csv_header("t,x,y,z,epsilon");
  for (const auto& p : traj)
    csv += fmt_double(p.t) + "," + fmt_double(p.x) + "," + fmt_double(p.y) + "," +
           fmt_double(p.z) + "," + fmt_double(epsilon) + "\n";
  atomic_write(out, csv);
  std::printf("wrote %s (%zu samples)\n", out.c_str(), traj.size());
  return 0;
}

DeviceParams params_from(const std::string& path) {
  return path.empty() ? DeviceParams::defaults() : load_device_params(path);
}

std::string dump_unitary(const Matrix& u) {
  std::ostringstream out;
  out << "# rotating-frame unitary at tau; rows of re,im pairs\n";
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j)
      out << fmt_double(u(i, j).real()) << " " << fmt_double(u(i, j).imag())
          << (j + 1 == u.cols() ? "" : "  ");
    out << "\n";
  }
  return out.str();
}

int cmd_two_qubit_simulate(const std::string& params_path, const std::string& gate,
                           const std::string& frame, const std::string& scheme,
                           double drive_ratio, long steps, bool calibrate,
                           const std::string& out) {
  const DeviceParams dev = params_from(params_path);
  if (!dev.dispersive_ok())
    std::fprintf(stderr, "warning: g12 / |omega1 - omega2| > 0.1 (outside the dispersive regime)\n");
  CompensationOptions opts;
  opts.drive_ratio = drive_ratio;

  std::vector<DriveSegment> drives;
  int initial = 1;
  const bool is_cz = gate == "cz";
  if (is_cz) {
    drives = build_cz_drive(dev, opts, calibrate);
    initial = 4;
  } else {
    drives = build_iswap_drive(dev, scheme_from_string(scheme), opts);
  }
  const FrameKind fk = frame == "lab" ? FrameKind::Lab : FrameKind::Rotating;
  const TwoQubitResult r = simulate_two_qubit(dev, drives, fk, steps, initial, 2000);

  double total = 0;
  for (const auto& d : drives) total += d.duration;
  std::printf("%s drive: %zu segments, %.1f ns, A/Delta = %.3f, steps = %ld\n", gate.c_str(),
              drives.size(), total * 1e9, drives[0].amplitude / drives[0].mod_freq, r.steps);
  if (is_cz) {
    std::printf("conditional phase = %.6f rad (pi %+.2e)\n",
                conditional_phase(r.final_unitary.m),
                conditional_phase(r.final_unitary.m) - kPi);
    std::printf("z-corrected subspace fidelity vs cz: %.6f\n",
                zcorrected_subspace_fidelity(r.final_unitary.m, cz_ideal_9()));
  } else {
    std::printf("subspace fidelity vs iswap: raw %.6f, z-corrected %.6f\n",
                subspace_fidelity(r.final_unitary.m, iswap_ideal_9(), computational_indices()),
                zcorrected_subspace_fidelity(r.final_unitary.m, iswap_ideal_9()));
  }

  std::string csv = csv_header("t,p00,p01,p02,p10,p11,p12,p20,p21,p22");
  for (const auto& row : r.traces) {
    csv += fmt_double(row[0]);
    for (int k = 1; k < 10; ++k) csv += "," + fmt_double(row[k]);
    csv += "\n";
  }
  atomic_write(out, csv);
  atomic_write(out + ".unitary", dump_unitary(r.final_unitary.m));
  std::printf("wrote %s and %s.unitary\n", out.c_str(), out.c_str());
  return 0;
}

int cmd_two_qubit_sweep(const std::string& params_path, const std::string& scheme,
                        const HzFlag& da_min, const HzFlag& da_max, int points,
                        double drive_ratio, const std::string& out) {
  const DeviceParams dev = params_from(params_path);
  CompensationOptions opts;
  opts.drive_ratio = drive_ratio;
  const auto drives = build_iswap_drive(dev, scheme_from_string(scheme), opts);
  const double lo = 2 * kPi * da_min.value(-40e6);
  const double hi = 2 * kPi * da_max.value(+40e6);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  const auto pts = delta_a_sweep(dev, drives, grid);

  std::string csv = csv_header("delta_a_hz,equivalent_rabi_error,fidelity");
  for (const auto& p : pts)
    csv += fmt_double(p.delta_a / (2 * kPi)) + "," + fmt_double(p.equivalent_rabi_error) + "," +
           fmt_double(p.fidelity) + "\n";
  atomic_write(out, csv);
  std::printf("wrote %s (%zu points)\n", out.c_str(), pts.size());
  return 0;
}

int cmd_qpt(const std::string& schedule_path, double epsilon, const std::string& out) {
  const PulseSchedule s = load_schedule(schedule_path);
  const Matrix u =
      evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, epsilon}).final_unitary.m;
  const ProcessMatrix chi = qpt(unitary_channel(u));
  const ProcessMatrix ideal = ideal_chi(scheme_target_unitary(s));
  const double fp = process_fidelity(ideal, chi);

  nlohmann::json j;
  j["schedule"] = s.name;
  j["epsilon"] = epsilon;
  j["basis"] = "I,X,Y,Z";
  j["process_fidelity"] = fp;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      j["chi_real"][r][c] = chi.chi(r, c).real();
      j["chi_imag"][r][c] = chi.chi(r, c).imag();
    }
  atomic_write(out, j.dump(2) + "\n");
  std::printf("process fidelity vs scheme target: %.8f\nwrote %s\n", fp, out.c_str());
  return 0;
}

int cmd_rb(const std::string& lengths_csv, int sequences, std::uint64_t seed, double depol,
           const std::string& interleave_scheme, const std::string& interleave_gate,
           double epsilon, const std::string& out) {
  RBConfig cfg;
  std::stringstream ss(lengths_csv);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) cfg.lengths.push_back(std::stoi(item));
  cfg.sequences_per_length = sequences;
  cfg.seed = seed;
  cfg.depolarizing = depol;
  if (!interleave_scheme.empty()) {
    const PulseSchedule s =
        build_schedule(scheme_from_string(interleave_scheme), gate_from_string(interleave_gate));
    cfg.interleaved =
        evolve(s, ErrorModel{ErrorModel::Kind::RabiProportional, epsilon}).final_unitary.m;
    cfg.interleaved_ideal = scheme_target_unitary(s);
  }
  const RBResult r = rb_run(cfg);

  std::string csv = csv_header("length,sequence_fidelity");
  for (std::size_t i = 0; i < r.lengths.size(); ++i)
    csv += std::to_string(r.lengths[i]) + "," + fmt_double(r.sequence_fidelities[i]) + "\n";
  atomic_write(out, csv);
  std::printf("decay p = %.8f   average gate fidelity = %.8f   (A = %.4f, B = %.4f)\n",
              r.decay_p, r.avg_gate_fidelity, r.amplitude, r.offset);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// Reference datasets

int reproduce_fig1(const std::string& dir) {
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P1, Scheme::NGQG_P2}) {
    const PulseSchedule s = build_schedule(sch, Gate::X);
    const Frame f = s.frame.value_or(Frame{0, 0});
    std::string csv = csv_header("t,x,y,z,epsilon");
    for (double eps : {0.0, 0.1}) {
      for (const auto& p : bloch_trajectory(s, f, eps, 600))
        csv += fmt_double(p.t) + "," + fmt_double(p.x) + "," + fmt_double(p.y) + "," +
               fmt_double(p.z) + "," + fmt_double(eps) + "\n";
    }
    const std::string path = dir + "/fig1_" + to_string(sch) + ".csv";
    atomic_write(path, csv);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int reproduce_fig3(const std::string& dir) {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(0.02 * std::pow(10.0, i / 11.0));
  std::string slopes = csv_header("scheme,gate,slope");
  bool ok = true;
  for (Gate g : {Gate::X, Gate::Y, Gate::XHalf, Gate::YHalf}) {
    std::string csv = csv_header("scheme,epsilon,fidelity,infidelity");
    for (Scheme sch :
         {Scheme::SR_NGQG, Scheme::NGQG_P1, Scheme::NGQG_P2, Scheme::SSSP, Scheme::DYNAMICAL}) {
      PulseSchedule s;
      try {
        s = build_schedule(sch, g);
      } catch (const UnsupportedGate&) {
        continue;
      }
      const SweepResult r = fidelity_sweep(s, scheme_target_unitary(s), grid, 2048);
      for (const auto& [eps, fid] : r.points)
        csv += to_string(sch) + "," + fmt_double(eps) + "," + fmt_double(fid) + "," +
               fmt_double(1 - fid) + "\n";
      slopes += to_string(sch) + "," + to_string(g) + "," + fmt_double(r.fitted_slope) + "\n";
      std::printf("  %-10s %-2s slope %.3f\n", to_string(sch).c_str(), to_string(g).c_str(),
                  r.fitted_slope);
      if (sch == Scheme::SR_NGQG && (g == Gate::X || g == Gate::Y))
        ok = ok && std::abs(r.fitted_slope - 4) <= 0.3;
      if (sch == Scheme::DYNAMICAL && g == Gate::X)
        ok = ok && std::abs(r.fitted_slope - 2) <= 0.2;
    }
    const std::string path = dir + "/fig3_" + to_string(g) + ".csv";
    atomic_write(path, csv);
    std::printf("wrote %s\n", path.c_str());
  }
  atomic_write(dir + "/fig3_slopes.csv", slopes);
  std::printf("wrote %s/fig3_slopes.csv\n", dir.c_str());
  if (!ok) std::printf("slope summary outside the reference windows\n");
  return ok ? 0 : kExitCheckFailed;
}

int reproduce_fig4c(const std::string& dir, const std::string& params_path) {
  const DeviceParams dev = params_from(params_path);
  std::string csv =
      csv_header("scheme,delta_a_hz,a_over_delta,equivalent_rabi_error,fidelity_zcorrected");
  for (Scheme sch : {Scheme::SR_NGQG, Scheme::NGQG_P1, Scheme::DYNAMICAL}) {
    const auto drives = build_iswap_drive(dev, sch);
    const double delta = drives[0].mod_freq;
    const double a0 = drives[0].amplitude;
    const double j0 = bessel_j(1, a0 / delta);
    const auto base = simulate_two_qubit(dev, drives, FrameKind::Rotating, 0, 1);
    const long steps = 2 * base.steps;
    const double eq_hi = std::min(0.1, kBesselJ1Peak / j0 - 1.0 - 1e-9);
    std::vector<double> rows(9);
    std::vector<std::array<double, 4>> cols(9);
    parallel_for(9, [&](std::size_t i) {
      const double eqr = -0.1 + (eq_hi + 0.1) * i / 8;
      const double da = bessel_j1_inverse((1.0 + eqr) * j0) * delta - a0;
      std::vector<DriveSegment> shifted = drives;
      for (auto& s : shifted) s.amplitude += da;
      const auto r = simulate_two_qubit(dev, shifted, FrameKind::Rotating, steps, 1);
      cols[i] = {da / (2 * kPi), (a0 + da) / delta, eqr,
                 zcorrected_subspace_fidelity(r.final_unitary.m, iswap_ideal_9())};
    });
    for (const auto& c : cols)
      csv += to_string(sch) + "," + fmt_double(c[0]) + "," + fmt_double(c[1]) + "," +
             fmt_double(c[2]) + "," + fmt_double(c[3]) + "\n";
    std::printf("  %-10s done\n", to_string(sch).c_str());
  }
  atomic_write(dir + "/fig4c.csv", csv);
  std::printf("wrote %s/fig4c.csv\n", dir.c_str());
  return 0;
}

int reproduce_table3(const std::string& dir) {
  std::string csv = csv_header("scheme,gate,computed,reference,abs_diff,tolerance,pass");
  bool all = true;
  for (const auto& row : robustness_reference_table()) {
    const PulseSchedule s = build_schedule(row.scheme, row.gate);
    const double computed = std::abs(robustness_integral(s).d12_over_eps);
    const double diff = std::abs(computed - row.value);
    const bool ok = diff <= row.tolerance;
    all = all && ok;
    std::printf("  %-10s %-3s computed %.4f  reference %.2f  |diff| %.4f  %s\n",
                to_string(row.scheme).c_str(), to_string(row.gate).c_str(), computed, row.value,
                diff, ok ? "ok" : "MISMATCH");
    csv += to_string(row.scheme) + "," + to_string(row.gate) + "," + fmt_double(computed) + "," +
           fmt_double(row.value) + "," + fmt_double(diff) + "," + fmt_double(row.tolerance) +
           "," + (ok ? "1" : "0") + "\n";
  }
  atomic_write(dir + "/table3.csv", csv);
  std::printf("wrote %s/table3.csv\n", dir.c_str());
  return all ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geomgate: segmented geometric-gate pulse design, simulation and robustness analysis"};
  app.require_subcommand(1);

  // ---- pulse ----
  auto* pulse = app.add_subcommand("pulse", "build or check pulse schedules");
  pulse->require_subcommand(1);
  std::string scheme = "sr-ngqg", gate = "x", out, params_path;
  HzFlag omega0;
  double sigma_ratio = 1.0 / 6;

  auto* pb = pulse->add_subcommand("build", "construct a schedule and write it to a file");
  pb->add_option("--scheme", scheme, "sr-ngqg | ngqg-p1 | ngqg-p2 | sssp | dynamical");
  pb->add_option("--gate", gate, "x | y | x2 | y2");
  pb->add_option("--omega0", omega0.text, "drive scale Omega0/2pi in Hz (SI suffixes ok)");
  pb->add_option("--sigma-ratio", sigma_ratio, "Gaussian sigma as a fraction of duration");
  pb->add_option("--out", out, "output schedule file")->required();
  pb->callback([&] { std::exit(cmd_pulse_build(scheme, gate, omega0, sigma_ratio, out)); });

  bool require_sr = false;
  double d12_threshold = 0.05;
  auto* pc = pulse->add_subcommand("check", "constraint report: drive-vs-path, dynamical phase, D12");
  pc->add_option("--scheme", scheme, "sr-ngqg | ngqg-p1 | ngqg-p2 | sssp | dynamical");
  pc->add_option("--gate", gate, "x | y | x2 | y2");
  pc->add_option("--omega0", omega0.text, "drive scale Omega0/2pi in Hz");
  pc->add_flag("--require-super-robust", require_sr, "fail unless |D12/eps| is below threshold");
  pc->add_option("--d12-threshold", d12_threshold, "super-robust threshold (radians)");
  pc->callback(
      [&] { std::exit(cmd_pulse_check(scheme, gate, omega0, require_sr, d12_threshold)); });

  // ---- simulate ----
  std::string schedule_path;
  double epsilon = 0.0;
  int steps = kDefaultStepsPerSegment;
  auto* sim = app.add_subcommand("simulate", "evolve a schedule and report gate fidelities");
  sim->add_option("--schedule", schedule_path, "schedule file")->required();
  sim->add_option("--epsilon", epsilon, "quasi-static Rabi error");
  sim->add_option("--steps", steps, "integration steps per segment");
  sim->callback([&] { std::exit(cmd_simulate(schedule_path, epsilon, steps)); });

  // ---- sweep ----
  double eps_min = 0.02, eps_max = 0.2;
  int points = 10;
  auto* sw = app.add_subcommand("sweep", "fidelity vs Rabi error with a log-log slope fit");
  sw->add_option("--schedule", schedule_path, "schedule file")->required();
  sw->add_option("--eps-min", eps_min, "smallest epsilon");
  sw->add_option("--eps-max", eps_max, "largest epsilon");
  sw->add_option("--points", points, "grid size");
  sw->add_option("--steps", steps, "integration steps per segment");
  sw->add_option("--out", out, "output CSV (epsilon,fidelity,infidelity)")->required();
  sw->callback(
      [&] { std::exit(cmd_sweep(schedule_path, eps_min, eps_max, points, steps, out)); });

  // ---- trajectory ----
  int samples = 600;
  double alpha0 = 0.0, lambda0 = 0.0;
  bool scheme_frame = false;
  auto* tr = app.add_subcommand("trajectory", "Bloch trajectory of the evolved auxiliary state");
  tr->add_option("--schedule", schedule_path, "schedule file")->required();
  tr->add_option("--epsilon", epsilon, "quasi-static Rabi error");
  tr->add_option("--samples", samples, "number of samples");
  tr->add_option("--alpha0", alpha0, "initial polar angle (radians)");
  tr->add_option("--lambda0", lambda0, "initial azimuth (radians)");
  tr->add_flag("--scheme-frame", scheme_frame, "start in the scheme's auxiliary frame");
  tr->add_option("--out", out, "output CSV (t,x,y,z,epsilon)")->required();
  tr->callback([&] {
    std::exit(cmd_trajectory(schedule_path, epsilon, samples, alpha0, lambda0, scheme_frame, out));
  });

  // ---- two-qubit ----
  auto* tq = app.add_subcommand("two-qubit", "parametric-drive two-transmon simulation");
  tq->require_subcommand(1);
  std::string tq_gate = "iswap", frame = "rotating";
  double drive_ratio = 0.0;
  long tq_steps = 0;
  bool no_calibrate = false;

  auto* tqs = tq->add_subcommand("simulate", "simulate an iSWAP or CZ drive");
  tqs->add_option("--params", params_path, "device parameter file (defaults if omitted)");
  tqs->add_option("--gate", tq_gate, "iswap | cz");
  tqs->add_option("--frame", frame, "rotating | lab");
  tqs->add_option("--scheme", scheme, "single-qubit scheme mapped onto the iSWAP");
  tqs->add_option("--drive-ratio", drive_ratio, "operating point A/Delta (0 = per-scheme default)");
  tqs->add_option("--steps", tq_steps, "integrator steps (0 = auto-converged)");
  tqs->add_flag("--no-calibrate", no_calibrate, "skip the CZ conditional-phase calibration");
  tqs->add_option("--out", out, "population traces CSV; unitary goes to <out>.unitary")
      ->required();
  tqs->callback([&] {
    std::exit(cmd_two_qubit_simulate(params_path, tq_gate, frame, scheme, drive_ratio, tq_steps,
                                     !no_calibrate, out));
  });

  HzFlag da_min, da_max;
  auto* tqw = tq->add_subcommand("sweep", "iSWAP fidelity vs drive-amplitude offset");
  tqw->add_option("--params", params_path, "device parameter file (defaults if omitted)");
  tqw->add_option("--scheme", scheme, "single-qubit scheme mapped onto the iSWAP");
  tqw->add_option("--delta-a-min", da_min.text, "smallest amplitude offset in Hz (SI suffixes)");
  tqw->add_option("--delta-a-max", da_max.text, "largest amplitude offset in Hz");
  tqw->add_option("--points", points, "grid size");
  tqw->add_option("--drive-ratio", drive_ratio, "operating point A/Delta (0 = default)");
  tqw->add_option("--out", out, "output CSV")->required();
  tqw->callback([&] {
    std::exit(cmd_two_qubit_sweep(params_path, scheme, da_min, da_max, points, drive_ratio, out));
  });

  // ---- qpt ----
  auto* qp = app.add_subcommand("qpt", "simulated process tomography of a schedule");
  qp->add_option("--schedule", schedule_path, "schedule file")->required();
  qp->add_option("--epsilon", epsilon, "quasi-static Rabi error");
  qp->add_option("--out", out, "chi matrix JSON")->required();
  qp->callback([&] { std::exit(cmd_qpt(schedule_path, epsilon, out)); });

  // ---- rb ----
  std::string lengths = "1,2,4,8,16,32,64,128", inter_scheme, inter_gate = "x";
  int sequences = 50;
  std::uint64_t seed = 1;
  double depol = 0.0;
  auto* rb = app.add_subcommand("rb", "randomized benchmarking with exact expectation values");
  rb->add_option("--lengths", lengths, "comma-separated Clifford counts");
  rb->add_option("--sequences", sequences, "random sequences per length");
  rb->add_option("--seed", seed, "RNG seed");
  rb->add_option("--depol", depol, "depolarizing probability per Clifford");
  rb->add_option("--interleave", inter_scheme, "scheme of an interleaved gate (optional)");
  rb->add_option("--gate", inter_gate, "interleaved gate (default x)");
  rb->add_option("--epsilon", epsilon, "Rabi error applied to the interleaved gate");
  rb->add_option("--out", out, "output CSV (length,sequence_fidelity)")->required();
  rb->callback([&] {
    std::exit(cmd_rb(lengths, sequences, seed, depol, inter_scheme, inter_gate, epsilon, out));
  });

  // ---- reproduce ----
  std::string figure, out_dir = ".";
  auto* rep = app.add_subcommand("reproduce", "emit reference datasets (fig1|fig3|fig4c|table3)");
  rep->add_option("target", figure, "fig1 | fig3 | fig4c | table3")->required();
  rep->add_option("--out-dir", out_dir, "output directory");
  rep->add_option("--params", params_path, "device parameter file for fig4c");
  rep->callback([&] {
    std::filesystem::create_directories(out_dir);
    if (figure == "fig1") std::exit(reproduce_fig1(out_dir));
    if (figure == "fig3") std::exit(reproduce_fig3(out_dir));
    if (figure == "fig4c") std::exit(reproduce_fig4c(out_dir, params_path));
    if (figure == "table3") std::exit(reproduce_table3(out_dir));
    std::fprintf(stderr, "unknown reproduce target '%s'\n", figure.c_str());
    std::exit(1);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
