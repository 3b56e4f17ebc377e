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

#include "geomgate/twoqubit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "geomgate/bessel.hpp"
#include "geomgate/textio.hpp"
#include "geomgate/threading.hpp"

namespace geomgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDim = 9;

using Matrix9 = Eigen::Matrix<cxd, kDim, kDim>;
using Vector9 = Eigen::Matrix<cxd, kDim, 1>;

inline int n1_of(int i) { return i / 3; }
inline int n2_of(int i) { return i % 3; }

// <a|（a† + a)|b> for the 3-level ladder.
inline double ladder(int a, int b) {
  if (std::abs(a - b) != 1) return 0.0;
  return std::sqrt(static_cast<double>(std::max(a, b)));
}

// Bare level energy (linear-in-t part of the frame phase).
inline double level_energy(const DeviceParams& p, int i) {
  const int n1 = n1_of(i), n2 = n2_of(i);
  return p.omega1 * n1 + p.omega2 * n2 + 0.5 * p.anh1 * n1 * (n1 - 1) +
         0.5 * p.anh2 * n2 * (n2 - 1);
}

struct CouplingEntry {
  int r, c;       // r > c; the mirror entry is the conjugate
  double factor;  // ladder product (no g12)
  double nu;      // E_r - E_c
  int dn1;        // n1(r) - n1(c)
};

std::vector<CouplingEntry> coupling_entries(const DeviceParams& p) {
  std::vector<CouplingEntry> out;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < r; ++c) {
      const double f = ladder(n1_of(r), n1_of(c)) * ladder(n2_of(r), n2_of(c));
      if (f == 0.0) continue;
      out.push_back(CouplingEntry{r, c, f, level_energy(p, r) - level_energy(p, c),
                                  n1_of(r) - n1_of(c)});
    }
  return out;
}

// Segment lookup plus closed-form Phi(t) pieces; absolute time throughout.
struct DriveClock {
  const std::vector<DriveSegment>* drives;
  std::vector<double> starts;   // segment start times
  std::vector<double> phi_base; // Phi at segment start

  explicit DriveClock(const std::vector<DriveSegment>& d) : drives(&d) {
    double t = 0, phi = 0;
    for (const auto& seg : d) {
      starts.push_back(t);
      phi_base.push_back(phi);
      const double x = seg.amplitude / seg.mod_freq;
      phi -= x * (std::cos(seg.mod_freq * (t + seg.duration) + seg.phase) -
                  std::cos(seg.mod_freq * t + seg.phase));
      t += seg.duration;
    }
    starts.push_back(t);
    phi_base.push_back(phi);
  }

  double total() const { return starts.back(); }

  int index(double t) const {
    int k = static_cast<int>(drives->size()) - 1;
    for (std::size_t i = 0; i + 1 < starts.size(); ++i)
      if (t < starts[i + 1]) {
        k = static_cast<int>(i);
        break;
      }
    return k;
  }

  double phi(double t) const {
    if (drives->empty()) return 0.0;
    if (t >= total()) return phi_base.back();
    const int k = index(t);
    const DriveSegment& seg = (*drives)[k];
    const double x = seg.amplitude / seg.mod_freq;
    return phi_base[k] - x * (std::cos(seg.mod_freq * t + seg.phase) -
                              std::cos(seg.mod_freq * starts[k] + seg.phase));
  }

  // instantaneous modulation A sin(Delta t + phi), zero outside the drive
  double modulation(double t) const {
    if (drives->empty() || t >= total()) return 0.0;
    const int k = index(t);
    const DriveSegment& seg = (*drives)[k];
    return seg.amplitude * std::sin(seg.mod_freq * t + seg.phase);
  }
};

Matrix9 lab_hamiltonian9(const DeviceParams& p, const DriveClock& clock, double t) {
  Matrix9 h = Matrix9::Zero();
  const double mod = clock.modulation(t);
  for (int i = 0; i < kDim; ++i) h(i, i) = level_energy(p, i) + mod * n1_of(i);
  for (const auto& e : coupling_entries(p)) {
    h(e.r, e.c) = p.g12 * e.factor;
    h(e.c, e.r) = p.g12 * e.factor;
  }
  return h;
}

Matrix9 expm_herm9(const Matrix9& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix9> es(h);
  Vector9 ph;
  for (int k = 0; k < kDim; ++k) ph(k) = std::polar(1.0, -es.eigenvalues()(k) * dt);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DeviceParams DeviceParams::defaults() {
  DeviceParams p;
  p.omega1 = kTwoPi * 4.8e9;
  p.omega2 = kTwoPi * 5.4e9;
  p.anh1 = -kTwoPi * 220e6;
  p.anh2 = -kTwoPi * 230e6;
  p.g12 = kTwoPi * 12e6;
  return p;
}

void DeviceParams::validate() const {
  if (levels_per_qubit != 3) throw Error("only 3 levels per qubit are modeled");
  if (!(g12 > 0)) throw Error("g12 must be positive");
  if (!(anh1 < 0) || !(anh2 < 0)) throw Error("anharmonicities must be negative");
  if (!std::isfinite(omega1) || !std::isfinite(omega2)) throw Error("frequencies must be finite");
}

bool DeviceParams::dispersive_ok() const {
  return std::abs(g12) <= 0.1 * std::abs(omega1 - omega2);
}

DeviceParams load_device_params(const std::string& path) {
  const auto sections = parse_kv_document(read_file(path));
  const KvSection& head = sections.front();
  DeviceParams p;
  p.omega1 = kTwoPi * head.get_double("omega1_hz");
  p.omega2 = kTwoPi * head.get_double("omega2_hz");
  p.anh1 = kTwoPi * head.get_double("anh1_hz");
  p.anh2 = kTwoPi * head.get_double("anh2_hz");
  p.g12 = kTwoPi * head.get_double("g12_hz");
  p.validate();
  return p;
}

std::string serialize_device_params(const DeviceParams& p) {
  std::ostringstream out;
  out << "# geomgate device parameters (frequencies in Hz)\n";
  out << "omega1_hz = " << fmt_double(p.omega1 / kTwoPi) << "\n";
  out << "omega2_hz = " << fmt_double(p.omega2 / kTwoPi) << "\n";
  out << "anh1_hz = " << fmt_double(p.anh1 / kTwoPi) << "\n";
  out << "anh2_hz = " << fmt_double(p.anh2 / kTwoPi) << "\n";
  out << "g12_hz = " << fmt_double(p.g12 / kTwoPi) << "\n";
  return out.str();
}

Matrix lab_hamiltonian(const DeviceParams& params, const DriveSegment& drive, double t) {
  params.validate();
  if (drive.mod_freq == 0.0) throw Error("mod_freq must be nonzero");
  std::vector<DriveSegment> one{drive};
  DriveClock clock(one);
  return Matrix(lab_hamiltonian9(params, clock, t));
}

double drive_phase_accum(const std::vector<DriveSegment>& drives, double t) {
  return DriveClock(drives).phi(t);
}

UnitaryMatrix rotating_frame_unitary(const DeviceParams& params,
                                     const std::vector<DriveSegment>& drives, double t) {
  DriveClock clock(drives);
  const double phi = clock.phi(t);
  Matrix u = Matrix::Zero(kDim, kDim);
  for (int i = 0; i < kDim; ++i) {
    // extended precision keeps the multi-kilorad frame phases differentiable
    // by the finite-difference oracle
    const long double lam = static_cast<long double>(level_energy(params, i)) *
                                static_cast<long double>(t) +
                            static_cast<long double>(phi) * n1_of(i);
    const double reduced = static_cast<double>(
        std::fmod(lam, static_cast<long double>(2.0L * std::numbers::pi_v<long double>)));
    u(i, i) = std::polar(1.0, -reduced);
  }
  return UnitaryMatrix{std::move(u)};
}

namespace {

// Exact rotating-frame Hamiltonian entry phases: H^R_rc = g12 f e^{i(nu t + dn1 Phi(t))}.
Matrix9 rotating_hamiltonian9(const DeviceParams& p, const std::vector<CouplingEntry>& entries,
                              const DriveClock& clock, double t) {
  Matrix9 h = Matrix9::Zero();
  const double phi = clock.phi(t);
  for (const auto& e : entries) {
    const cxd v = p.g12 * e.factor * std::polar(1.0, e.nu * t + e.dn1 * phi);
    h(e.r, e.c) = v;
    h(e.c, e.r) = std::conj(v);
  }
  return h;
}

void check_bessel_tail(double x, int cutoff) {
  const auto j = bessel_j_upto(cutoff + 40, std::abs(x));
  double tail = 0;
  for (int n = cutoff + 1; n <= cutoff + 40; ++n) tail += 2.0 * std::abs(j[n]);
  if (tail >= 1e-10)
    throw CutoffTooLow("Bessel tail " + std::to_string(tail) + " at cutoff " +
                       std::to_string(cutoff));
}

}  // namespace

Matrix rotating_hamiltonian(const DeviceParams& params, const std::vector<DriveSegment>& drives,
                            double t, HMethod method, int cutoff) {
  params.validate();
  DriveClock clock(drives);

  if (method == HMethod::FrameTransform) {
    // U†HU - iU†U̇ with Richardson-extrapolated centered differences for U̇.
    const Matrix u = rotating_frame_unitary(params, drives, t).m;
    const Matrix h = Matrix(lab_hamiltonian9(params, clock, t));
    const double delta = 5e-14;
    auto udot = [&](double d) -> Matrix {
      return (rotating_frame_unitary(params, drives, t + d).m -
              rotating_frame_unitary(params, drives, t - d).m) /
             (2 * d);
    };
    const Matrix du = (4.0 * udot(delta) - udot(2 * delta)) / 3.0;
    return u.adjoint() * h * u - cxd(0, 1) * (u.adjoint() * du);
  }

  // Analytic: Jacobi-Anger expansion of e^{i dn1 Phi(t)} per coupled entry.
  Matrix h = Matrix::Zero(kDim, kDim);
  const int k = drives.empty() ? 0 : clock.index(t);
  const bool active = !drives.empty() && t < clock.total();
  double x = 0, dfreq = 1, phase = 0, phi_const = 0;
  if (active) {
    const DriveSegment& seg = drives[k];
    dfreq = seg.mod_freq;
    phase = seg.phase;
    x = seg.amplitude / dfreq;
    // Phi(t) = phi_const - x cos(dfreq t + phase) within the segment
    phi_const = clock.phi_base[k] + x * std::cos(dfreq * clock.starts[k] + phase);
    check_bessel_tail(x, cutoff);
  }
  for (const auto& e : coupling_entries(params)) {
    cxd osc;
    if (!active) {
      osc = std::polar(1.0, e.nu * t + e.dn1 * clock.phi(t));
    } else {
      // e^{i dn1 Phi} = e^{i dn1 phi_const} sum_n i^n J_n(-dn1 x) e^{in(dfreq t + phase)}
      const double beta = -e.dn1 * x;
      cxd sum = 0;
      for (int n = -cutoff; n <= cutoff; ++n)
        sum += std::polar(1.0, 0.5 * kPi * n + n * (dfreq * t + phase)) * bessel_j(n, beta);
      osc = std::polar(1.0, e.nu * t + e.dn1 * phi_const) * sum;
    }
    const cxd v = params.g12 * e.factor * osc;
    h(e.r, e.c) = v;
    h(e.c, e.r) = std::conj(v);
  }
  return h;
}

double resonance_select(const DeviceParams& params, TwoQubitGate gate) {
  params.validate();
  if (gate == TwoQubitGate::iSWAP) return params.omega2 - params.omega1;
  return params.omega2 + params.anh2 - params.omega1;
}

SidebandExpansion sideband_expansion(const DeviceParams& params, const DriveSegment& drive,
                                     int cutoff) {
  params.validate();
  if (drive.mod_freq == 0.0) throw Error("mod_freq must be nonzero");
  const double x = drive.amplitude / drive.mod_freq;
  check_bessel_tail(x, cutoff);

  SidebandExpansion out;
  out.order_cutoff = cutoff;
  out.bessel_argument = x;
  struct Family {
    int to, from;
    double factor;
  };
  const Family fams[3] = {{3, 1, 1.0}, {4, 2, std::numbers::sqrt2}, {6, 4, std::numbers::sqrt2}};
  const double phi0 = x * std::cos(drive.phase);  // Phi bookkeeping at t = 0
  for (const auto& f : fams) {
    const double nu = level_energy(params, f.to) - level_energy(params, f.from);
    for (int m = -cutoff; m <= cutoff; ++m) {
      const cxd coeff = params.g12 * f.factor * bessel_j(m, -x) *
                        std::polar(1.0, 0.5 * kPi * m + m * drive.phase + phi0);
      out.terms.push_back(SidebandTerm{m, coeff, f.from, f.to, nu + m * drive.mod_freq});
    }
  }
  return out;
}

cxd effective_coupling(const DeviceParams& params, const std::vector<DriveSegment>& drives,
                       std::size_t m, TwoQubitGate gate) {
  DriveClock clock(drives);
  const DriveSegment& seg = drives.at(m);
  const double x = seg.amplitude / seg.mod_freq;
  const double lad = gate == TwoQubitGate::iSWAP ? 1.0 : std::numbers::sqrt2;
  // static n = +1 term of e^{i nu t + i Phi(t)} with nu = -Delta
  const double phase = -0.5 * kPi + seg.phase + clock.phi_base[m] +
                       x * std::cos(seg.mod_freq * clock.starts[m] + seg.phase);
  return params.g12 * lad * bessel_j(1, x) * std::polar(1.0, phase);
}

double default_drive_ratio(Scheme scheme, TwoQubitGate gate) {
  if (gate == TwoQubitGate::CZ) return 1.0;
  switch (scheme) {
    case Scheme::SR_NGQG: return 1.0;
    case Scheme::NGQG_P1:
    case Scheme::NGQG_P2: return 0.8;
    default: return 1.2;
  }
}

std::vector<DriveSegment> compensate_schedule(const PulseSchedule& ideal,
                                              const DeviceParams& params, TwoQubitGate gate,
                                              const CompensationOptions& opts) {
  params.validate();
  const double delta =
      opts.mod_freq_override != 0 ? opts.mod_freq_override : resonance_select(params, gate);
  if (!(delta > 0))
    throw Error("parametric resonance frequency must be positive for this device");
  const double ratio =
      opts.drive_ratio != 0 ? opts.drive_ratio : default_drive_ratio(ideal.scheme, gate);
  if (!(ratio > 0) || ratio > kBesselJ1PeakArg)
    throw Error("drive_ratio outside the monotone Bessel branch");
  const double lad = gate == TwoQubitGate::iSWAP ? 1.0 : std::numbers::sqrt2;

  // Uniform target coupling magnitude; per-segment duration carries the area.
  const double target_coupling = params.g12 * bessel_j(1, ratio);
  if (!(target_coupling <= params.g12 * kBesselJ1Peak))
    throw AmplitudeUnreachable("target exceeds g12 * max J1");
  const double x = bessel_j1_inverse(target_coupling / params.g12);
  const double amplitude = x * delta;

  std::vector<DriveSegment> out;
  double t0 = 0.0;   // segment start
  double phi_acc = 0.0;  // Phi(t0)
  for (std::size_t m = 0; m < ideal.segments.size(); ++m) {
    const double theta = ideal.rotation_angles[m];
    const double phi_target = ideal.segments[m].phase;
    DriveSegment seg;
    seg.amplitude = amplitude;
    seg.mod_freq = delta;
    seg.duration = theta / (2.0 * lad * target_coupling);
    if (opts.compensate) {
      // solve  -pi/2 + phi + Phi(t0) + x cos(Delta t0 + phi) = phi_target (mod 2pi)
      auto f = [&](double phi) {
        return -0.5 * kPi + phi + phi_acc + x * std::cos(delta * t0 + phi) - phi_target;
      };
      // f(guess -/+ pi) = -/+ pi + x cos(..) with |x| < pi/2 + 1, so the
      // bracket straddles zero for every drive_ratio on the monotone branch.
      const double guess = phi_target + 0.5 * kPi - phi_acc;
      double lo = guess - kPi, hi = guess + kPi;
      if (!(f(lo) <= 0 && f(hi) >= 0)) throw NoPhaseSolution("phase bracket failed");
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0 ? lo : hi) = mid;
      }
      seg.phase = 0.5 * (lo + hi);
      if (std::abs(f(seg.phase)) > 1e-9)
        throw NoPhaseSolution("phase equation residual too large");
      seg.phase = std::remainder(seg.phase, kTwoPi);
    } else {
      seg.phase = std::remainder(phi_target - 0.5 * kPi, kTwoPi);
    }
    seg.compensated_phase = phi_target;
    seg.frame_phase = std::remainder(phi_target - seg.phase, kTwoPi);
    out.push_back(seg);

    const double t1 = t0 + seg.duration;
    phi_acc -= x * (std::cos(delta * t1 + seg.phase) - std::cos(delta * t0 + seg.phase));
    t0 = t1;
  }
  return out;
}

PulseSchedule cz_circuit_schedule() {
  PulseSchedule s;
  s.name = "cz-circuit";
  s.scheme = Scheme::DYNAMICAL;
  s.gate = Gate::X;
  PulseSegment seg;
  seg.duration = 2 * kPi;
  seg.envelope.kind = EnvelopeKind::SinSquared;
  seg.envelope.amplitude = 1.0;
  seg.phase = -kPi / 2;
  s.segments = {seg, seg};
  s.rotation_angles = {kPi, kPi};
  return s;
}

std::vector<DriveSegment> build_iswap_drive(const DeviceParams& params, Scheme scheme,
                                            const CompensationOptions& opts) {
  PulseSchedule ideal;
  switch (scheme) {
    case Scheme::SR_NGQG: ideal = build_sr_ngqg(Gate::X); break;
    case Scheme::NGQG_P1:
    case Scheme::NGQG_P2: ideal = build_ngqg_reference(scheme, Gate::X); break;
    case Scheme::DYNAMICAL: ideal = build_dynamical_gaussian(Gate::X); break;
    default: throw UnsupportedGate("iswap drive mapping needs a segmented or dynamical scheme");
  }
  return compensate_schedule(ideal, params, TwoQubitGate::iSWAP, opts);
}

std::vector<DriveSegment> build_cz_drive(const DeviceParams& params,
                                         const CompensationOptions& opts, bool calibrate) {
  const PulseSchedule circuit = cz_circuit_schedule();
  if (!calibrate) return compensate_schedule(circuit, params, TwoQubitGate::CZ, opts);

  const double delta0 = resonance_select(params, TwoQubitGate::CZ);
  auto phase_err = [&](double detune) {
    CompensationOptions o = opts;
    o.mod_freq_override = delta0 + detune;
    const auto drives = compensate_schedule(circuit, params, TwoQubitGate::CZ, o);
    const auto r = simulate_two_qubit(params, drives, FrameKind::Rotating, 0, 4);
    return std::remainder(conditional_phase(r.final_unitary.m) - kPi, kTwoPi);
  };
  // The conditional phase moves monotonically with small drive detuning;
  // bracket within ±2 MHz and bisect.
  double lo = -kTwoPi * 2e6, hi = kTwoPi * 2e6;
  double flo = phase_err(lo), fhi = phase_err(hi);
  if (flo > fhi) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  if (!(flo <= 0 && fhi >= 0))
    throw ConvergenceFailure("conditional-phase calibration bracket failed");
  for (int it = 0; it < 24; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phase_err(mid);
    if (std::abs(fm) < 2e-4) {
      lo = hi = mid;
      break;
    }
    (fm <= 0 ? lo : hi) = mid;
  }
  CompensationOptions o = opts;
  o.mod_freq_override = delta0 + 0.5 * (lo + hi);
  return compensate_schedule(circuit, params, TwoQubitGate::CZ, o);
}

Matrix iswap_ideal_9() {
  Matrix u = Matrix::Identity(kDim, kDim);
  u(1, 1) = 0;
  u(3, 3) = 0;
  u(1, 3) = cxd(0, -1);
  u(3, 1) = cxd(0, -1);
  return u;
}

Matrix cz_ideal_9() {
  Matrix u = Matrix::Identity(kDim, kDim);
  u(4, 4) = -1;
  return u;
}

double zcorrected_subspace_fidelity(const Matrix& u9, const Matrix& ideal9) {
  // Tr(P V† Z U P) = (g00 + g01 e^{i th2}) + e^{i th1} (g10 + g11 e^{i th2});
  // the theta1 maximum is the sum of the two magnitudes, leaving a smooth
  // 1-D problem in theta2.
  cxd g[2][2] = {{0, 0}, {0, 0}};
  for (int j : computational_indices()) {
    cxd w = 0;
    for (int i : computational_indices()) w += std::conj(ideal9(j, i)) * u9(j, i);
    g[n1_of(j)][n2_of(j)] += w;
  }
  auto score = [&](double th2) {
    const cxd e = std::polar(1.0, th2);
    return std::abs(g[0][0] + g[0][1] * e) + std::abs(g[1][0] + g[1][1] * e);
  };
  double best = 0, best_th = 0;
  constexpr int kScan = 720;
  for (int i = 0; i < kScan; ++i) {
    const double th = kTwoPi * i / kScan;
    const double s = score(th);
    if (s > best) {
      best = s;
      best_th = th;
    }
  }
  double lo = best_th - kTwoPi / kScan, hi = best_th + kTwoPi / kScan;
  for (int it = 0; it < 80; ++it) {  // golden-section refine
    const double m1 = lo + 0.381966 * (hi - lo);
    const double m2 = hi - 0.381966 * (hi - lo);
    if (score(m1) < score(m2))
      lo = m1;
    else
      hi = m2;
  }
  best = std::max(best, score(0.5 * (lo + hi)));
  return best / 4.0;
}

double conditional_phase(const Matrix& u9) {
  const double phi = std::arg(u9(4, 4)) - std::arg(u9(3, 3)) - std::arg(u9(1, 1)) +
                     std::arg(u9(0, 0));
  return std::remainder(phi, kTwoPi);
}

TwoQubitResult simulate_two_qubit(const DeviceParams& params,
                                  const std::vector<DriveSegment>& drives, FrameKind frame,
                                  long steps, int initial_state, int trace_samples) {
  params.validate();
  for (const auto& d : drives)
    if (d.mod_freq == 0.0) throw Error("mod_freq must be nonzero");
  DriveClock clock(drives);
  const double total = clock.total();
  if (!(total > 0)) throw Error("empty drive schedule");
  const auto entries = coupling_entries(params);

  double nu_max = 0, a_max = 0;
  for (const auto& e : entries) nu_max = std::max(nu_max, std::abs(e.nu));
  for (const auto& d : drives) a_max = std::max(a_max, std::abs(d.amplitude));
  const double omega_fast = nu_max + a_max + params.g12;

  // 4th-order commutator-free Magnus step (two Gauss-node exponentials).
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double a1 = 0.25 + std::sqrt(3.0) / 6.0, a2 = 0.25 - std::sqrt(3.0) / 6.0;

  auto hamil = [&](double t) -> Matrix9 {
    if (frame == FrameKind::Rotating) return rotating_hamiltonian9(params, entries, clock, t);
    return lab_hamiltonian9(params, clock, t);
  };

  auto run = [&](long n, std::vector<std::array<double, 10>>* traces,
                 double* defect) -> Matrix9 {
    Matrix9 u = Matrix9::Identity();
    const double h = total / n;
    const long stride = traces && trace_samples > 0 ? std::max<long>(1, n / trace_samples) : 0;
    double max_defect = 0;
    for (long i = 0; i < n; ++i) {
      const double t = i * h;
      const Matrix9 h1 = hamil(t + c1 * h);
      const Matrix9 h2 = hamil(t + c2 * h);
      const Matrix9 g1 = a1 * h1 + a2 * h2;
      const Matrix9 g2 = a2 * h1 + a1 * h2;
      u = expm_herm9(g2, h) * expm_herm9(g1, h) * u;
      if (stride && ((i + 1) % stride == 0 || i + 1 == n)) {
        std::array<double, 10> row{};
        row[0] = (i + 1) * h;
        for (int k = 0; k < kDim; ++k) row[k + 1] = std::norm(u(k, initial_state));
        traces->push_back(row);
        max_defect = std::max(max_defect,
                              (u.adjoint() * u - Matrix9::Identity()).cwiseAbs().maxCoeff());
      }
    }
    if (defect)
      *defect = std::max(max_defect,
                         (u.adjoint() * u - Matrix9::Identity()).cwiseAbs().maxCoeff());
    return u;
  };

  long n = steps;
  Matrix9 u;
  double defect = 0;
  std::vector<std::array<double, 10>> traces;
  if (n > 0) {
    u = run(n, trace_samples > 0 ? &traces : nullptr, &defect);
  } else {
    n = std::max<long>(256, static_cast<long>(total * omega_fast * 8 / kTwoPi));
    Matrix9 prev = run(n, nullptr, nullptr);
    bool converged = false;
    for (int round = 0; round < 7; ++round) {
      n *= 2;
      traces.clear();
      u = run(n, trace_samples > 0 ? &traces : nullptr, &defect);
      if ((u - prev).cwiseAbs().maxCoeff() < 1e-7) {
        converged = true;
        break;
      }
      prev = u;
    }
    if (!converged) throw ConvergenceFailure("two-qubit integrator did not settle at 1e-7");
  }

  Matrix u_rot(u);
  if (frame == FrameKind::Lab) {
    // psi_R = U_frame† psi_lab, and the frame is the identity at t = 0.
    u_rot = rotating_frame_unitary(params, drives, total).m.adjoint() * u_rot;
  }
  TwoQubitResult out{UnitaryMatrix{u_rot}, n, defect, std::move(traces)};
  if (out.max_unitarity_defect > kUnitarityTol)
    throw EvolutionFailed("two-qubit unitarity defect " +
                          std::to_string(out.max_unitarity_defect));
  return out;
}

std::vector<DeltaASweepPoint> delta_a_sweep(const DeviceParams& params,
                                            const std::vector<DriveSegment>& drives,
                                            const std::vector<double>& delta_a_grid,
                                            long steps) {
  if (drives.empty()) throw Error("empty drive schedule");
  const double delta = drives.front().mod_freq;
  const double x0 = drives.front().amplitude / delta;
  const double j10 = bessel_j(1, x0);
  const Matrix ideal = iswap_ideal_9();

  std::vector<DeltaASweepPoint> out(delta_a_grid.size());
  parallel_for(delta_a_grid.size(), [&](std::size_t i) {
    const double da = delta_a_grid[i];
    std::vector<DriveSegment> shifted = drives;
    for (auto& seg : shifted) {
      seg.amplitude += da;
      const double x = seg.amplitude / seg.mod_freq;
      if (!(x > 0) || x > kBesselJ1PeakArg)
        throw BranchExceeded("A/Delta = " + std::to_string(x) +
                             " leaves the monotone J1 branch");
    }
    const TwoQubitResult r = simulate_two_qubit(params, shifted, FrameKind::Rotating, steps, 1);
    const double fid = subspace_fidelity(r.final_unitary.m, ideal, computational_indices());
    const double eq = (bessel_j(1, (drives.front().amplitude + da) / delta) - j10) / j10;
    out[i] = DeltaASweepPoint{da, fid, eq};
  });
  return out;
}

}  // namespace geomgate
