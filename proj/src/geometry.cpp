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

#include "geomgate/geometry.hpp"

#include <cmath>
#include <numbers>

#include "geomgate/evolution.hpp"

namespace geomgate {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd drive_hamiltonian(double omega, double phase) {
  Eigen::Matrix2cd h;
  const cxd e = std::polar(0.5 * omega, -phase);
  h << 0.0, e, std::conj(e), 0.0;
  return h;
}
}  // namespace

double PathSegment::alpha_delta(double u) const {
  return alpha_lin * u + alpha_amp * (std::sin(alpha_freq * u + alpha_phase0) -
                                      std::sin(alpha_phase0));
}

double PathSegment::alpha_dot(double u) const {
  return alpha_lin + alpha_amp * alpha_freq * std::cos(alpha_freq * u + alpha_phase0);
}

double PathSpec::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

double PathSpec::alpha_entry(int k) const {
  double a = alpha0;
  for (int i = 0; i < k; ++i) a += segments[i].alpha_delta(segments[i].duration);
  return a;
}

int PathSpec::segment_index(double t, double* u) const {
  double start = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (t < start + segments[i].duration || i + 1 == segments.size()) {
      *u = std::clamp(t - start, 0.0, segments[i].duration);
      return static_cast<int>(i);
    }
    start += segments[i].duration;
  }
  *u = 0;
  return 0;
}

double PathSpec::alpha_at(double t) const {
  double u;
  const int k = segment_index(t, &u);
  return alpha_entry(k) + segments[k].alpha_delta(u);
}

double PathSpec::alpha_dot_at(double t) const {
  double u;
  const int k = segment_index(t, &u);
  return segments[k].alpha_dot(u);
}

double PathSpec::lambda_at(double t) const {
  double u;
  const int k = segment_index(t, &u);
  return segments[k].lambda_at(u);
}

// ---------------------------------------------------------------------------

PathSpec sr_path(Gate gate) {
  const PulseSchedule sched = build_sr_ngqg(gate);
  PathSpec p;
  p.alpha0 = sched.frame->alpha0;
  for (const auto& seg : sched.segments) {
    // alpha_dot = Omega0 sin^2(pi u / T) integrates the sin^2 envelope exactly
    PathSegment ps;
    ps.duration = seg.duration;
    const double k = kPi / seg.duration;
    ps.alpha_lin = 0.5;
    ps.alpha_amp = -1.0 / (4.0 * k);
    ps.alpha_freq = 2.0 * k;
    ps.alpha_phase0 = 0.0;
    ps.lambda = *seg.path_lambda;
    ps.lambda_rate = 0.0;
    p.segments.push_back(ps);
  }
  return p;
}

PulseSchedule path_to_pulse(const PathSpec& path, const std::string& name, double omega0_hz) {
  PulseSchedule s;
  s.name = name;
  s.scheme = Scheme::SR_NGQG;
  s.omega0_hz = omega0_hz;
  s.frame = Frame{path.alpha0, path.segments.empty() ? 0.0 : path.segments.front().lambda};

  for (std::size_t k = 0; k < path.segments.size(); ++k) {
    const PathSegment& ps = path.segments[k];
    PulseSegment seg;
    seg.duration = ps.duration;
    if (ps.lambda_rate == 0.0) {
      // phi = lambda +/- pi/2, branch fixed by the sign of alpha_dot.
      int sign = 0;
      constexpr int kGrid = 512;
      for (int i = 0; i <= kGrid; ++i) {
        const double ad = ps.alpha_dot(ps.duration * i / kGrid);
        if (std::abs(ad) < 1e-12) continue;
        const int sg = ad > 0 ? 1 : -1;
        if (sign == 0) sign = sg;
        if (sg != sign)
          throw SingularPath("alpha_dot changes sign inside a constant-lambda segment");
      }
      if (sign == 0) sign = 1;  // idle segment, Omega = 0
      seg.phase = ps.lambda + sign * kPi / 2;
      seg.path_lambda = ps.lambda;
      // sin^2 pattern: alpha_dot = lin (1 - cos(freq u)) with amp*freq = -lin
      const bool sin2 = std::abs(ps.alpha_phase0) < 1e-12 &&
                        std::abs(ps.alpha_amp * ps.alpha_freq + ps.alpha_lin) <
                            1e-12 * std::max(1.0, std::abs(ps.alpha_lin)) &&
                        std::abs(ps.alpha_freq * ps.duration - 2 * kPi) < 1e-9;
      if (sin2) {
        seg.envelope.kind = EnvelopeKind::SinSquared;
        seg.envelope.amplitude = 2.0 * std::abs(ps.alpha_lin);
      } else {
        seg.envelope.kind = EnvelopeKind::TableFormula;
        constexpr int kSamples = 4096;
        seg.envelope.table.resize(kSamples + 1);
        for (int i = 0; i <= kSamples; ++i) {
          const double u = ps.duration * i / kSamples;
          seg.envelope.table[i] = TableSample{u, std::abs(ps.alpha_dot(u)), 0.0};
        }
        seg.phase = 0.0;
        for (auto& ts : seg.envelope.table) ts.phase = ps.lambda + sign * kPi / 2;
      }
    } else {
      // General inverse-path branch with drifting lambda, emitted as samples.
      seg.envelope.kind = EnvelopeKind::TableFormula;
      constexpr int kSamples = 4096;
      seg.envelope.table.resize(kSamples + 1);
      seg.phase = 0.0;
      const double a_entry = path.alpha_entry(static_cast<int>(k));
      for (int i = 0; i <= kSamples; ++i) {
        const double u = ps.duration * i / kSamples;
        const double ad = ps.alpha_dot(u);
        const double alpha = a_entry + ps.alpha_delta(u);
        const double lam = ps.lambda_at(u);
        double phi = lam - std::atan(ad / (ps.lambda_rate * std::tan(alpha)));
        double den = std::sin(phi - lam);
        if (std::abs(den) < 1e-12) {
          if (std::abs(ad) > 1e-12)
            throw SingularPath("sin(phi - lambda) vanishes where alpha_dot != 0");
          seg.envelope.table[i] = TableSample{u, 0.0, phi};
          continue;
        }
        double omega = ad / den;
        if (omega < 0) {  // shift the arctan branch so Omega >= 0
          phi += kPi;
          omega = -omega;
        }
        seg.envelope.table[i] = TableSample{u, omega, phi};
      }
    }
    s.segments.push_back(std::move(seg));
  }
  for (const auto& seg : s.segments) s.rotation_angles.push_back(seg.envelope.area(seg.duration));
  return s;
}

AuxiliaryFrame auxiliary_frame(double alpha, double lambda) {
  AuxiliaryFrame f;
  const double c = std::cos(0.5 * alpha), sn = std::sin(0.5 * alpha);
  f.xi1 << c, sn * std::polar(1.0, lambda);
  f.xi2 << sn * std::polar(1.0, -lambda), -c;
  return f;
}

GeomKinetics ak_matrices(const PathSpec& path, const PulseSchedule& schedule, double t,
                         double epsilon) {
  const double total = path.total_duration();
  double edge = 0;
  for (const auto& seg : path.segments) {
    edge += seg.duration;
    if (std::abs(t - edge) < 1e-12 * total && std::abs(t - total) > 1e-12 * total)
      throw BoundaryTime("t lies on a segment boundary");
  }
  if (t < 0 || t > total) throw BoundaryTime("t outside the schedule");

  double u;
  const int k = path.segment_index(t, &u);
  const PathSegment& ps = path.segments[k];
  const double alpha = path.alpha_entry(k) + ps.alpha_delta(u);
  const double adot = ps.alpha_dot(u);
  const double lam = ps.lambda_at(u);
  const double ldot = ps.lambda_rate;

  GeomKinetics g;
  const double half = std::sin(0.5 * alpha);
  g.a_diag = -ldot * half * half;
  g.k_diag = 0.5 * ldot * std::sin(alpha) * std::tan(alpha);

  // A12 = i<xi1|d_t xi2> in closed form; K12 = -<xi1|H|xi2> from the schedule.
  const cxd a12 = cxd(0, 1) * std::polar(1.0, -lam) *
                  cxd(0.5 * adot, -0.5 * ldot * std::sin(alpha));
  double om, phi;
  schedule.sample(t, &om, &phi);
  const Eigen::Matrix2cd h = (1.0 + epsilon) * drive_hamiltonian(om, phi);
  const AuxiliaryFrame f = auxiliary_frame(alpha, lam);
  const cxd k12 = -(f.xi1.adjoint() * h * f.xi2)(0, 0);
  g.offdiag_residual = a12 + k12;
  return g;
}

namespace {

// Composite Simpson of fn over the path, plus jump terms weight(alpha, d_lambda).
template <typename SegFn, typename JumpFn>
double path_integral(const PathSpec& path, SegFn&& integrand, JumpFn&& jump) {
  constexpr int kNodes = 4096;
  double acc = 0.0;
  for (std::size_t k = 0; k < path.segments.size(); ++k) {
    const PathSegment& ps = path.segments[k];
    const double a_entry = path.alpha_entry(static_cast<int>(k));
    if (ps.lambda_rate != 0.0) {
      const double h = ps.duration / kNodes;
      double sum = 0.0;
      for (int i = 0; i <= kNodes; ++i) {
        const double w = (i == 0 || i == kNodes) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double u = i * h;
        sum += w * integrand(a_entry + ps.alpha_delta(u), ps.lambda_rate);
      }
      acc += sum * h / 3.0;
    }
    if (k + 1 < path.segments.size()) {
      const double alpha_b = path.alpha_entry(static_cast<int>(k) + 1);
      const double d_lambda = path.segments[k + 1].lambda -
                              ps.lambda_at(ps.duration);
      if (d_lambda != 0.0) acc += jump(alpha_b, d_lambda);
    }
  }
  return acc;
}

}  // namespace

double dynamical_phase_check(const PathSpec& path) {
  return path_integral(
      path,
      [](double alpha, double ldot) { return 0.5 * ldot * std::sin(alpha) * std::tan(alpha); },
      [](double alpha, double dl) {
        const double w = 0.5 * std::sin(alpha) * std::tan(alpha);
        return std::abs(w) > 1e-12 ? dl * w : 0.0;
      });
}

double geometric_phase(const PathSpec& path) {
  return -path_integral(
      path,
      [](double alpha, double ldot) {
        const double half = std::sin(0.5 * alpha);
        return ldot * half * half;
      },
      [](double alpha, double dl) {
        const double half = std::sin(0.5 * alpha);
        return dl * half * half;
      });
}

UnitaryMatrix ideal_gate(const PathSpec& path) {
  const double phi_g = geometric_phase(path);
  const PathSegment& last = path.segments.back();
  const AuxiliaryFrame f0 =
      auxiliary_frame(path.alpha0, path.segments.front().lambda_at(0.0));
  const AuxiliaryFrame f1 = auxiliary_frame(
      path.alpha_entry(static_cast<int>(path.segments.size() - 1)) +
          last.alpha_delta(last.duration),
      last.lambda_at(last.duration));
  Eigen::Matrix2cd u = std::polar(1.0, phi_g) * f1.xi1 * f0.xi1.adjoint() +
                       std::polar(1.0, -phi_g) * f1.xi2 * f0.xi2.adjoint();
  return UnitaryMatrix::checked(Matrix(u), 1e-9);
}

RobustnessMatrix robustness_matrix(const PulseSchedule& schedule, int steps_per_segment) {
  const Frame frame = schedule.frame.value_or(Frame{0.0, 0.0});
  const AuxiliaryFrame f = auxiliary_frame(frame.alpha0, frame.lambda0);

  // Trapezoid accumulation of <psi_m|H0|psi_n> over the exact eps=0 grid.
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  bool have_prev = false;
  double t_prev = 0.0;
  Eigen::Matrix2cd f_prev;
  evolve_grid(schedule, 0.0, steps_per_segment,
              [&](double t, const Eigen::Matrix2cd& u, double om, double ph) {
                const Eigen::Matrix2cd h = drive_hamiltonian(om, ph);
                Eigen::Matrix2cd basis;
                basis.col(0) = u * f.xi1;
                basis.col(1) = u * f.xi2;
                const Eigen::Matrix2cd val = basis.adjoint() * h * basis;
                if (have_prev) acc += 0.5 * (t - t_prev) * (f_prev + val);
                f_prev = val;
                t_prev = t;
                have_prev = true;
              });
  RobustnessMatrix m;
  m.d11 = acc(0, 0);
  m.d12 = acc(0, 1);
  m.d21 = acc(1, 0);
  m.d22 = acc(1, 1);
  m.frame = frame;
  return m;
}

RobustnessIntegral robustness_integral(const PulseSchedule& schedule, int steps_per_segment) {
  const RobustnessMatrix m = robustness_matrix(schedule, steps_per_segment);
  return RobustnessIntegral{m.d12, m.d21, to_string(schedule.scheme), to_string(schedule.gate)};
}

std::vector<BlochSample> bloch_trajectory(const PulseSchedule& schedule, const Frame& frame,
                                          double epsilon, int samples) {
  if (samples < 2) throw Error("samples must be >= 2");
  const AuxiliaryFrame f = auxiliary_frame(frame.alpha0, frame.lambda0);
  const double total = schedule.total_duration();
  std::vector<BlochSample> out;
  out.reserve(samples + 1);
  double next = 0.0;
  const double stride = total / (samples - 1);
  evolve_grid(schedule, epsilon, 4096,
              [&](double t, const Eigen::Matrix2cd& u, double, double) {
                if (t + 1e-12 < next) return;
                const Eigen::Vector2cd psi = u * f.xi1;
                const auto [x, y, z] = bloch_coordinates(psi);
                out.push_back(BlochSample{t, x, y, z});
                next += stride;
              });
  return out;
}

Matrix canonical_gate_unitary(Gate g) {
  switch (g) {
    case Gate::X: return mat_exp(pauli_x(), kPi / 2).m;             // -i sx
    case Gate::Y: return mat_exp(pauli_y(), kPi / 2).m;             // -i sy
    case Gate::XHalf: return mat_exp(pauli_x(), -kPi / 4).m;        // exp(+i pi/4 sx)
    case Gate::YHalf: return mat_exp(pauli_y(), -kPi / 4).m;
  }
  throw Error("unreachable");
}

Matrix scheme_target_unitary(const PulseSchedule& schedule) {
  if (schedule.scheme == Scheme::SR_NGQG) return ideal_gate(sr_path(schedule.gate)).m;
  return canonical_gate_unitary(schedule.gate);
}

}  // namespace geomgate
