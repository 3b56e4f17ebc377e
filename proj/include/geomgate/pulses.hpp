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

#include <optional>
#include <string>
#include <vector>

#include "geomgate/errors.hpp"

namespace geomgate {

enum class Scheme { SR_NGQG, NGQG_P1, NGQG_P2, SSSP, DYNAMICAL };
enum class Gate { X, Y, XHalf, YHalf };

std::string to_string(Scheme s);
std::string to_string(Gate g);
Scheme scheme_from_string(const std::string& s);
Gate gate_from_string(const std::string& s);

/// Default physical drive scale Omega0/2pi when a schedule is mapped to seconds.
inline constexpr double kDefaultOmega0Hz = 1e7;

enum class EnvelopeKind { SinSquared, Gaussian, Constant, TableFormula };

struct TableSample {
  double u;      // time offset into the segment, units 1/Omega0
  double omega;  // instantaneous amplitude, units Omega0
  double phase;  // instantaneous drive phase, radians
};

/// Drive amplitude shape over one segment. Times are dimensionless (Omega0*t).
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::SinSquared;
  double amplitude = 1.0;        // peak (SinSquared/Gaussian), level (Constant)
  double sigma_ratio = 1.0 / 6;  // Gaussian: sigma as a fraction of the duration
  std::vector<TableSample> table;

  double value(double u, double duration) const;
  /// Exact cumulative integral of the envelope over [0, u].
  double cumulative(double u, double duration) const;
  double area(double duration) const { return cumulative(duration, duration); }
};

struct PulseSegment {
  double duration = 0.0;  // units 1/Omega0
  Envelope envelope;
  double phase = 0.0;  // constant drive phase; TableFormula adds its samples on top
  std::optional<double> path_lambda;  // auxiliary-frame azimuth, when known
};

/// Auxiliary frame (alpha, lambda) at t = 0 used for robustness integrals.
struct Frame {
  double alpha0 = 0.0;
  double lambda0 = 0.0;
};

struct PulseSchedule {
  std::string name;
  Scheme scheme = Scheme::DYNAMICAL;
  Gate gate = Gate::X;
  double omega0_hz = kDefaultOmega0Hz;
  std::vector<PulseSegment> segments;
  std::vector<double> rotation_angles;  // per-segment pulse areas, radians
  std::optional<Frame> frame;

  double total_duration() const;
  /// Instantaneous (omega, phase) at global dimensionless time t.
  void sample(double t, double* omega, double* phase) const;
  /// Segment index containing t (last segment at t = total duration).
  int segment_index(double t) const;
  void validate() const;
};

// Builders for every reference pulse family plus the Gaussian baseline.
PulseSchedule build_sr_ngqg(Gate gate, double omega0_hz = kDefaultOmega0Hz);
PulseSchedule build_ngqg_reference(Scheme scheme, Gate gate, double omega0_hz = kDefaultOmega0Hz);
PulseSchedule build_sssp(double omega0_hz = kDefaultOmega0Hz);
PulseSchedule build_dynamical_gaussian(Gate gate, double sigma_ratio = 1.0 / 6,
                                       double omega0_hz = kDefaultOmega0Hz);
/// Dispatch on (scheme, gate); SSSP supports X only.
PulseSchedule build_schedule(Scheme scheme, Gate gate, double omega0_hz = kDefaultOmega0Hz);

// Canonical text document round trip.
std::string serialize_schedule(const PulseSchedule& s);
PulseSchedule parse_schedule(const std::string& text);
void save_schedule(const std::string& path, const PulseSchedule& s);
PulseSchedule load_schedule(const std::string& path);

bool schedules_equal(const PulseSchedule& a, const PulseSchedule& b, double tol = 0.0);

}  // namespace geomgate
