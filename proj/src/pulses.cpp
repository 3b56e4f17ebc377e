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

#include "geomgate/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geomgate/textio.hpp"

namespace geomgate {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::SR_NGQG: return "sr-ngqg";
    case Scheme::NGQG_P1: return "ngqg-p1";
    case Scheme::NGQG_P2: return "ngqg-p2";
    case Scheme::SSSP: return "sssp";
    case Scheme::DYNAMICAL: return "dynamical";
  }
  return "?";
}

std::string to_string(Gate g) {
  switch (g) {
    case Gate::X: return "x";
    case Gate::Y: return "y";
    case Gate::XHalf: return "x2";
    case Gate::YHalf: return "y2";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "sr-ngqg" || s == "sr_ngqg") return Scheme::SR_NGQG;
  if (s == "ngqg-p1" || s == "ngqg_p1") return Scheme::NGQG_P1;
  if (s == "ngqg-p2" || s == "ngqg_p2") return Scheme::NGQG_P2;
  if (s == "sssp") return Scheme::SSSP;
  if (s == "dynamical") return Scheme::DYNAMICAL;
  throw ParseError("unknown scheme '" + s + "'");
}

Gate gate_from_string(const std::string& s) {
  if (s == "x") return Gate::X;
  if (s == "y") return Gate::Y;
  if (s == "x2" || s == "x/2" || s == "x_half") return Gate::XHalf;
  if (s == "y2" || s == "y/2" || s == "y_half") return Gate::YHalf;
  throw ParseError("unknown gate '" + s + "'");
}

// ---------------------------------------------------------------------------
// Envelope

double Envelope::value(double u, double duration) const {
  switch (kind) {
    case EnvelopeKind::SinSquared: {
      const double s = std::sin(kPi * u / duration);
      return amplitude * s * s;
    }
    case EnvelopeKind::Constant:
      return amplitude;
    case EnvelopeKind::Gaussian: {
      const double sigma = sigma_ratio * duration;
      const double c = 0.5 * duration;
      const double edge = std::exp(-c * c / (2 * sigma * sigma));
      const double g = std::exp(-(u - c) * (u - c) / (2 * sigma * sigma));
      return amplitude * (g - edge) / (1.0 - edge);
    }
    case EnvelopeKind::TableFormula: {
      if (table.empty()) return 0.0;
      if (u <= table.front().u) return table.front().omega;
      if (u >= table.back().u) return table.back().omega;
      auto it = std::upper_bound(table.begin(), table.end(), u,
                                 [](double t, const TableSample& s) { return t < s.u; });
      const TableSample& b = *it;
      const TableSample& a = *(it - 1);
      const double w = (u - a.u) / (b.u - a.u);
      return a.omega + w * (b.omega - a.omega);
    }
  }
  return 0.0;
}

double Envelope::cumulative(double u, double duration) const {
  u = std::clamp(u, 0.0, duration);
  switch (kind) {
    case EnvelopeKind::SinSquared: {
      const double k = kPi / duration;
      return amplitude * (0.5 * u - std::sin(2 * k * u) / (4 * k));
    }
    case EnvelopeKind::Constant:
      return amplitude * u;
    case EnvelopeKind::Gaussian: {
      const double sigma = sigma_ratio * duration;
      const double c = 0.5 * duration;
      const double edge = std::exp(-c * c / (2 * sigma * sigma));
      const double root2 = std::numbers::sqrt2;
      const double gauss_part = sigma * std::sqrt(kPi / 2.0) *
                                (std::erf((u - c) / (sigma * root2)) + std::erf(c / (sigma * root2)));
      return amplitude * (gauss_part - edge * u) / (1.0 - edge);
    }
    case EnvelopeKind::TableFormula: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        const TableSample& a = table[i];
        const TableSample& b = table[i + 1];
        if (u <= a.u) break;
        if (u >= b.u) {
          acc += 0.5 * (a.omega + b.omega) * (b.u - a.u);
        } else {
          const double w = (u - a.u) / (b.u - a.u);
          const double om = a.omega + w * (b.omega - a.omega);
          acc += 0.5 * (a.omega + om) * (u - a.u);
          break;
        }
      }
      return acc;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// PulseSchedule

double PulseSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

int PulseSchedule::segment_index(double t) const {
  double start = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (t < start + segments[i].duration || i + 1 == segments.size())
      return static_cast<int>(i);
    start += segments[i].duration;
  }
  return static_cast<int>(segments.size()) - 1;
}

void PulseSchedule::sample(double t, double* omega, double* phase) const {
  const int idx = segment_index(t);
  double start = 0.0;
  for (int i = 0; i < idx; ++i) start += segments[i].duration;
  const PulseSegment& seg = segments[idx];
  const double u = std::clamp(t - start, 0.0, seg.duration);
  *omega = seg.envelope.value(u, seg.duration);
  double ph = seg.phase;
  if (seg.envelope.kind == EnvelopeKind::TableFormula && !seg.envelope.table.empty()) {
    const auto& tab = seg.envelope.table;
    if (u <= tab.front().u) {
      ph += tab.front().phase;
    } else if (u >= tab.back().u) {
      ph += tab.back().phase;
    } else {
      auto it = std::upper_bound(tab.begin(), tab.end(), u,
                                 [](double x, const TableSample& s) { return x < s.u; });
      const TableSample& b = *it;
      const TableSample& a = *(it - 1);
      const double w = (u - a.u) / (b.u - a.u);
      ph += a.phase + w * (b.phase - a.phase);
    }
  }
  *phase = ph;
}

void PulseSchedule::validate() const {
  if (segments.empty()) throw Error("schedule '" + name + "' has no segments");
  if (rotation_angles.size() != segments.size())
    throw Error("schedule '" + name + "' rotation_angles/segments size mismatch");
  for (const auto& s : segments) {
    if (!(s.duration > 0)) throw Error("segment duration must be positive");
    if (!std::isfinite(s.phase)) throw Error("segment phase must be finite");
  }
}

namespace {

std::vector<double> analytic_areas(const PulseSchedule& s) {
  std::vector<double> out;
  out.reserve(s.segments.size());
  for (const auto& seg : s.segments) out.push_back(seg.envelope.area(seg.duration));
  return out;
}

PulseSegment sin2_segment(double duration, double phase, std::optional<double> lambda) {
  PulseSegment seg;
  seg.duration = duration;
  seg.envelope.kind = EnvelopeKind::SinSquared;
  seg.envelope.amplitude = 1.0;
  seg.phase = phase;
  seg.path_lambda = lambda;
  return seg;
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

PulseSchedule build_sr_ngqg(Gate gate, double omega0_hz) {
  if (!(omega0_hz > 0)) throw Error("omega0 must be positive");
  PulseSchedule s;
  s.scheme = Scheme::SR_NGQG;
  s.gate = gate;
  s.omega0_hz = omega0_hz;
  s.name = "sr-ngqg-" + to_string(gate);

  const double shift = (gate == Gate::Y || gate == Gate::YHalf) ? kPi / 2 : 0.0;
  std::vector<double> durations, phases;
  double frame_alpha0 = 0.0;
  if (gate == Gate::X || gate == Gate::Y) {
    durations = {kPi, 2 * kPi, 2 * kPi, kPi};
    phases = {kPi / 3, 5 * kPi / 3, kPi / 3, 5 * kPi / 3};
    // lambda jumps land at alpha = pi, 2pi, 3pi
    frame_alpha0 = kPi / 2;
  } else {
    durations = {1.28 * kPi, 2 * kPi, 1.28 * kPi};
    phases = {1.232, -1.236, 1.232};
    // lambda jumps land at alpha = pi, 2pi
    frame_alpha0 = 0.36 * kPi;
  }
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const double phi = phases[i] + shift;
    s.segments.push_back(sin2_segment(durations[i], phi, phi - kPi / 2));
  }
  s.rotation_angles = analytic_areas(s);
  s.frame = Frame{frame_alpha0, *s.segments[0].path_lambda};
  return s;
}

PulseSchedule build_ngqg_reference(Scheme scheme, Gate gate, double omega0_hz) {
  if (!(omega0_hz > 0)) throw Error("omega0 must be positive");
  if (scheme != Scheme::NGQG_P1 && scheme != Scheme::NGQG_P2)
    throw Error("build_ngqg_reference expects NGQG_P1 or NGQG_P2");
  if (gate != Gate::X && gate != Gate::XHalf)
    throw UnsupportedGate(to_string(scheme) + " defines only x and x2 pulses");

  PulseSchedule s;
  s.scheme = scheme;
  s.gate = gate;
  s.omega0_hz = omega0_hz;
  s.name = to_string(scheme) + "-" + to_string(gate);

  std::vector<double> areas, phases;
  if (scheme == Scheme::NGQG_P1 && gate == Gate::X) {
    areas = {kPi / 2, kPi, kPi, kPi, kPi / 2};
    phases = {-kPi / 2, 3 * kPi / 4, -kPi / 2, 3 * kPi / 4, -kPi / 2};
  } else if (scheme == Scheme::NGQG_P1) {
    areas = {kPi / 2, kPi, kPi / 2};
    phases = {-kPi / 2, 3 * kPi / 4, -kPi / 2};
  } else if (gate == Gate::X) {
    areas = {kPi / 2, kPi, kPi / 2};
    phases = {-kPi / 2, 0.0, -kPi / 2};
  } else {
    areas = {kPi / 2, kPi, kPi / 2};
    phases = {-kPi / 2, -kPi / 4, -kPi / 2};
  }
  for (std::size_t i = 0; i < areas.size(); ++i) {
    // sin^2 envelope at unit peak has area = duration / 2
    s.segments.push_back(sin2_segment(2.0 * areas[i], phases[i], std::nullopt));
  }
  s.rotation_angles = analytic_areas(s);
  s.frame = Frame{kPi / 2, 0.0};  // auxiliary states |+/-> for the x-axis gates
  return s;
}

PulseSchedule build_dynamical_gaussian(Gate gate, double sigma_ratio, double omega0_hz) {
  if (!(sigma_ratio > 0)) throw Error("sigma_ratio must be positive");
  if (!(omega0_hz > 0)) throw Error("omega0 must be positive");
  PulseSchedule s;
  s.scheme = Scheme::DYNAMICAL;
  s.gate = gate;
  s.omega0_hz = omega0_hz;
  s.name = "dynamical-" + to_string(gate);

  const double target = (gate == Gate::X || gate == Gate::Y) ? kPi : kPi / 2;
  // area per unit duration at unit peak, truncated and offset-subtracted
  const double edge = std::exp(-1.0 / (8 * sigma_ratio * sigma_ratio));
  const double per_t =
      (sigma_ratio * std::sqrt(2 * kPi) * std::erf(1.0 / (2 * std::numbers::sqrt2 * sigma_ratio)) -
       edge) /
      (1.0 - edge);
  PulseSegment seg;
  seg.duration = target / per_t;
  seg.envelope.kind = EnvelopeKind::Gaussian;
  seg.envelope.amplitude = 1.0;
  seg.envelope.sigma_ratio = sigma_ratio;
  // phi = pi rotates about -x under the e^{-i phi}|0><1| drive convention;
  // the Y family adds pi/2.
  seg.phase = (gate == Gate::Y || gate == Gate::YHalf) ? 3 * kPi / 2 : kPi;
  s.segments.push_back(seg);
  s.rotation_angles = analytic_areas(s);
  s.frame = Frame{0.0, 0.0};  // computational basis
  return s;
}

namespace {

// Single-shot shaped pulse: fifth-order trigonometric expansion coefficients.
constexpr double kSsspC[5] = {2.3347, -1.9450, 0.3944, -0.1139, -0.3723};
constexpr double kSsspA[5] = {-0.0990, -0.1176, -0.0394, -0.0119, 0.0};

double sssp_alpha(double s) {
  double a = kPi * s;
  for (int m = 1; m <= 5; ++m) a += kSsspA[m - 1] * std::sin(2 * kPi * m * s);
  return a;
}

double sssp_alpha_dot(double s) {
  double d = kPi;
  for (int m = 1; m <= 5; ++m) d += kSsspA[m - 1] * 2 * kPi * m * std::cos(2 * kPi * m * s);
  return d;
}

double sssp_dgamma_dalpha(double a) {
  double d = 2.0;
  for (int n = 1; n <= 5; ++n) d += kSsspC[n - 1] * 2 * n * std::cos(2 * n * a);
  return d;
}

double sssp_gamma_dot(double s) { return sssp_dgamma_dalpha(sssp_alpha(s)) * sssp_alpha_dot(s); }

}  // namespace

PulseSchedule build_sssp(double omega0_hz) {
  if (!(omega0_hz > 0)) throw Error("omega0 must be positive");
  constexpr int kIntervals = 16384;
  const double h = 1.0 / kIntervals;

  // State azimuth lambda and the axis-alignment integrals, Simpson per interval.
  std::vector<double> lambda_rel(kIntervals + 1, 0.0);
  double tilt = 0.0;  // integral of gamma_dot * sin^2(alpha/2)
  for (int i = 0; i < kIntervals; ++i) {
    const double s0 = i * h, s1 = (i + 1) * h, sm = s0 + 0.5 * h;
    auto az = [](double s) { return sssp_gamma_dot(s) * std::cos(sssp_alpha(s)); };
    auto tl = [](double s) {
      const double half = std::sin(0.5 * sssp_alpha(s));
      return sssp_gamma_dot(s) * half * half;
    };
    lambda_rel[i + 1] = lambda_rel[i] + h / 6.0 * (az(s0) + 4 * az(sm) + az(s1));
    tilt += h / 6.0 * (tl(s0) + 4 * tl(sm) + tl(s1));
  }
  // Align the composed pi rotation with the x axis.
  const double lambda0 = tilt - lambda_rel[kIntervals] - kPi / 2;

  std::vector<TableSample> table(kIntervals + 1);
  double peak = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double s = i * h;
    const double ad = sssp_alpha_dot(s);
    const double gd = sssp_gamma_dot(s);
    const double sa = std::sin(sssp_alpha(s));
    const double omega_s = std::hypot(ad, gd * sa);
    double phase;
    if (omega_s < 1e-9) {
      phase = lambda0 + lambda_rel[i] + kPi / 2;
    } else {
      phase = lambda0 + lambda_rel[i] + std::atan2(ad, -gd * sa);
    }
    table[i] = TableSample{s, omega_s, phase};
    peak = std::max(peak, omega_s);
  }
  // Rescale time so the peak amplitude is Omega0.
  const double duration = peak;
  for (auto& ts : table) {
    ts.u *= duration;
    ts.omega /= duration;
  }
  // Endpoint phases: carry the first/last interior value (zero-amplitude limit).
  table.front().phase = table[1].phase;
  table.back().phase = table[table.size() - 2].phase;

  PulseSchedule s;
  s.scheme = Scheme::SSSP;
  s.gate = Gate::X;
  s.omega0_hz = omega0_hz;
  s.name = "sssp-x";
  PulseSegment seg;
  seg.duration = duration;
  seg.envelope.kind = EnvelopeKind::TableFormula;
  seg.envelope.amplitude = 1.0;
  seg.envelope.table = std::move(table);
  seg.phase = 0.0;
  s.segments.push_back(std::move(seg));
  s.rotation_angles = analytic_areas(s);
  s.frame = Frame{0.0, 0.0};
  return s;
}

PulseSchedule build_schedule(Scheme scheme, Gate gate, double omega0_hz) {
  switch (scheme) {
    case Scheme::SR_NGQG: return build_sr_ngqg(gate, omega0_hz);
    case Scheme::NGQG_P1:
    case Scheme::NGQG_P2: return build_ngqg_reference(scheme, gate, omega0_hz);
    case Scheme::SSSP:
      if (gate != Gate::X) throw UnsupportedGate("sssp defines only the x pulse");
      return build_sssp(omega0_hz);
    case Scheme::DYNAMICAL: return build_dynamical_gaussian(gate, 1.0 / 6, omega0_hz);
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Serialization

namespace {
const char* envelope_kind_name(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::SinSquared: return "sin_squared";
    case EnvelopeKind::Gaussian: return "gaussian";
    case EnvelopeKind::Constant: return "constant";
    case EnvelopeKind::TableFormula: return "table_formula";
  }
  return "?";
}

EnvelopeKind envelope_kind_from(const std::string& s) {
  if (s == "sin_squared") return EnvelopeKind::SinSquared;
  if (s == "gaussian") return EnvelopeKind::Gaussian;
  if (s == "constant") return EnvelopeKind::Constant;
  if (s == "table_formula") return EnvelopeKind::TableFormula;
  throw ParseError("unknown envelope kind '" + s + "'");
}
}  // namespace

std::string serialize_schedule(const PulseSchedule& s) {
  std::ostringstream out;
  out << "# geomgate pulse schedule\n";
  out << "# durations in 1/Omega0, amplitudes in Omega0, angles in radians\n";
  out << "name = " << s.name << "\n";
  out << "scheme = " << to_string(s.scheme) << "\n";
  out << "gate = " << to_string(s.gate) << "\n";
  out << "omega0_hz = " << fmt_double(s.omega0_hz) << "\n";
  if (s.frame) {
    out << "frame.alpha0 = " << fmt_double(s.frame->alpha0) << "\n";
    out << "frame.lambda0 = " << fmt_double(s.frame->lambda0) << "\n";
  }
  for (const auto& seg : s.segments) {
    out << "\n[segment]\n";
    out << "duration = " << fmt_double(seg.duration) << "\n";
    out << "envelope.kind = " << envelope_kind_name(seg.envelope.kind) << "\n";
    out << "envelope.params.amplitude = " << fmt_double(seg.envelope.amplitude) << "\n";
    if (seg.envelope.kind == EnvelopeKind::Gaussian)
      out << "envelope.params.sigma_ratio = " << fmt_double(seg.envelope.sigma_ratio) << "\n";
    out << "phase = " << fmt_double(seg.phase) << "\n";
    if (seg.path_lambda) out << "path_lambda = " << fmt_double(*seg.path_lambda) << "\n";
    for (const auto& ts : seg.envelope.table)
      out << "sample = " << fmt_double(ts.u) << " " << fmt_double(ts.omega) << " "
          << fmt_double(ts.phase) << "\n";
  }
  return out.str();
}

PulseSchedule parse_schedule(const std::string& text) {
  const auto sections = parse_kv_document(text);
  const KvSection& head = sections.front();
  PulseSchedule s;
  s.name = head.get("name");
  s.scheme = scheme_from_string(head.get("scheme"));
  if (head.has("gate")) s.gate = gate_from_string(head.get("gate"));
  s.omega0_hz = head.get_double("omega0_hz");
  if (head.has("frame.alpha0"))
    s.frame = Frame{head.get_double("frame.alpha0"),
                    head.has("frame.lambda0") ? head.get_double("frame.lambda0") : 0.0};

  for (std::size_t i = 1; i < sections.size(); ++i) {
    const KvSection& sec = sections[i];
    if (sec.name != "segment")
      throw ParseError("unexpected section [" + sec.name + "] at line " + std::to_string(sec.line));
    PulseSegment seg;
    seg.duration = sec.get_double("duration");
    if (!(seg.duration > 0))
      throw ParseError("segment at line " + std::to_string(sec.line) +
                       ": duration must be positive");
    seg.envelope.kind = envelope_kind_from(sec.get("envelope.kind"));
    seg.envelope.amplitude = sec.get_double("envelope.params.amplitude");
    if (sec.has("envelope.params.sigma_ratio"))
      seg.envelope.sigma_ratio = sec.get_double("envelope.params.sigma_ratio");
    seg.phase = sec.get_double("phase");
    if (sec.has("path_lambda")) seg.path_lambda = sec.get_double("path_lambda");
    for (const auto& [k, v] : sec.entries) {
      if (k != "sample") continue;
      std::istringstream ss(v);
      TableSample ts{};
      if (!(ss >> ts.u >> ts.omega >> ts.phase))
        throw ParseError("bad sample line '" + v + "' in segment at line " +
                         std::to_string(sec.line));
      seg.envelope.table.push_back(ts);
    }
    if (seg.envelope.kind == EnvelopeKind::TableFormula && seg.envelope.table.size() < 2)
      throw ParseError("table_formula segment at line " + std::to_string(sec.line) +
                       " needs at least 2 samples");
    s.segments.push_back(std::move(seg));
  }
  if (s.segments.empty()) throw ParseError("schedule has no [segment] sections");
  for (const auto& seg : s.segments) s.rotation_angles.push_back(seg.envelope.area(seg.duration));
  return s;
}

void save_schedule(const std::string& path, const PulseSchedule& s) {
  atomic_write(path, serialize_schedule(s));
}

PulseSchedule load_schedule(const std::string& path) { return parse_schedule(read_file(path)); }

bool schedules_equal(const PulseSchedule& a, const PulseSchedule& b, double tol) {
  auto eq = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  if (a.name != b.name || a.scheme != b.scheme || a.gate != b.gate) return false;
  if (!eq(a.omega0_hz, b.omega0_hz)) return false;
  if (a.frame.has_value() != b.frame.has_value()) return false;
  if (a.frame && (!eq(a.frame->alpha0, b.frame->alpha0) || !eq(a.frame->lambda0, b.frame->lambda0)))
    return false;
  if (a.segments.size() != b.segments.size()) return false;
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    const auto& x = a.segments[i];
    const auto& y = b.segments[i];
    if (x.envelope.kind != y.envelope.kind) return false;
    if (!eq(x.duration, y.duration) || !eq(x.phase, y.phase)) return false;
    if (!eq(x.envelope.amplitude, y.envelope.amplitude)) return false;
    if (x.envelope.kind == EnvelopeKind::Gaussian &&
        !eq(x.envelope.sigma_ratio, y.envelope.sigma_ratio))
      return false;
    if (x.path_lambda.has_value() != y.path_lambda.has_value()) return false;
    if (x.path_lambda && !eq(*x.path_lambda, *y.path_lambda)) return false;
    if (x.envelope.table.size() != y.envelope.table.size()) return false;
    for (std::size_t j = 0; j < x.envelope.table.size(); ++j) {
      if (!eq(x.envelope.table[j].u, y.envelope.table[j].u) ||
          !eq(x.envelope.table[j].omega, y.envelope.table[j].omega) ||
          !eq(x.envelope.table[j].phase, y.envelope.table[j].phase))
        return false;
    }
  }
  return true;
}

}  // namespace geomgate
