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

#include <string>
#include <vector>

#include "geomgate/linalg.hpp"
#include "geomgate/pulses.hpp"

namespace geomgate {

/// One constant-lambda (optionally linearly drifting) stretch of the
/// auxiliary-state path. Within the segment, with u the local time,
///   alpha(u) = alpha_entry + lin*u + amp*(sin(freq*u + phase0) - sin(phase0))
///   lambda(u) = lambda + lambda_rate*u
struct PathSegment {
  double duration = 0.0;
  double alpha_lin = 0.0;
  double alpha_amp = 0.0;
  double alpha_freq = 0.0;
  double alpha_phase0 = 0.0;
  double lambda = 0.0;
  double lambda_rate = 0.0;

  double alpha_delta(double u) const;  // alpha(u) - alpha(entry)
  double alpha_dot(double u) const;
  double lambda_at(double u) const { return lambda + lambda_rate * u; }
};

struct PathSpec {
  double alpha0 = 0.0;
  std::vector<PathSegment> segments;

  double total_duration() const;
  /// alpha at the entry of segment k (cumulative).
  double alpha_entry(int k) const;
  int segment_index(double t, double* u) const;
  double alpha_at(double t) const;
  double alpha_dot_at(double t) const;
  double lambda_at(double t) const;
};

/// Auxiliary paths of the noncyclic robust pulses (lambda jumps land at poles).
PathSpec sr_path(Gate gate);

/// Inverse path construction: the drive (Omega, phi) realizing the given
/// auxiliary path, Omega = alpha_dot / sin(phi - lambda). Emits closed-form
/// sin^2 envelopes when the path derivative has that shape, dense samples
/// otherwise. Throws SingularPath if sin(phi - lambda) vanishes where
/// alpha_dot != 0.
PulseSchedule path_to_pulse(const PathSpec& path, const std::string& name = "path-pulse",
                            double omega0_hz = kDefaultOmega0Hz);

struct AuxiliaryFrame {
  Eigen::Vector2cd xi1, xi2;
};
AuxiliaryFrame auxiliary_frame(double alpha, double lambda);

struct GeomKinetics {
  double a_diag = 0.0;      // A_11 = -lambda_dot sin^2(alpha/2)
  double k_diag = 0.0;      // K_11 = (1/2) lambda_dot sin(alpha) tan(alpha)
  cxd offdiag_residual{0.0, 0.0};  // (A + K)_12
};

/// A/K diagnostics at an interior time t; epsilon perturbs the drive amplitude.
GeomKinetics ak_matrices(const PathSpec& path, const PulseSchedule& schedule, double t,
                         double epsilon = 0.0);

/// Dynamical-phase residual: integral of (1/2) lambda_dot sin(alpha) tan(alpha),
/// including lambda-jump contributions at segment boundaries.
double dynamical_phase_check(const PathSpec& path);

/// Geometric phase: -integral of lambda_dot sin^2(alpha/2), including
/// -d_lambda sin^2(alpha/2) at each jump.
double geometric_phase(const PathSpec& path);

/// Noncyclic ideal operator built from the path's end frames and phase.
UnitaryMatrix ideal_gate(const PathSpec& path);

/// D_mn / epsilon in the schedule's auxiliary frame (computational if unset):
/// M_mn = integral of <psi_m| H0 |psi_n> dt over the exact eps=0 evolution.
struct RobustnessMatrix {
  cxd d11, d12, d21, d22;
  Frame frame;
};
RobustnessMatrix robustness_matrix(const PulseSchedule& schedule, int steps_per_segment = 4096);

struct RobustnessIntegral {
  cxd d12_over_eps;
  cxd d21_over_eps;
  std::string scheme;
  std::string gate;
};
RobustnessIntegral robustness_integral(const PulseSchedule& schedule,
                                       int steps_per_segment = 4096);

struct BlochSample {
  double t, x, y, z;
};
/// Bloch trajectory of the evolved |psi_1(t)> started in xi_1(alpha0, lambda0).
std::vector<BlochSample> bloch_trajectory(const PulseSchedule& schedule, const Frame& frame,
                                          double epsilon, int samples);

/// Canonical single-qubit targets. Half gates follow the rotation sense the
/// reference pulse tables implement: X/2 = exp(+i pi/4 sx).
Matrix canonical_gate_unitary(Gate g);

/// Per-scheme ideal: the geometric construction for SR schedules, the
/// canonical unitary otherwise.
Matrix scheme_target_unitary(const PulseSchedule& schedule);

}  // namespace geomgate
