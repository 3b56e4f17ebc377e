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

#include "geomgate/evolution.hpp"

#include <cmath>

#include "geomgate/geometry.hpp"
#include "geomgate/threading.hpp"

namespace geomgate {

namespace {

// exp(-i (theta/2) (cos(phi) sx + sin(phi) sy)), closed form.
inline Eigen::Matrix2cd rot2(double phi, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix2cd u;
  const cxd e_m = std::polar(1.0, -phi);
  u << c, cxd(0, -s) * e_m, cxd(0, -s) * std::conj(e_m), c;
  return u;
}

}  // namespace

void evolve_grid(const PulseSchedule& schedule, double epsilon, int steps_per_segment,
                 const std::function<void(double, const Eigen::Matrix2cd&, double, double)>& cb) {
  if (steps_per_segment < 1) throw Error("steps_per_segment must be >= 1");
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  double om0 = 0, ph0 = 0;
  schedule.sample(0.0, &om0, &ph0);
  cb(0.0, u, om0, ph0);

  double start = 0.0;
  for (const PulseSegment& seg : schedule.segments) {
    if (seg.envelope.kind == EnvelopeKind::TableFormula) {
      const auto& tab = seg.envelope.table;
      const int intervals = static_cast<int>(tab.size()) - 1;
      int stride = intervals / std::min(intervals, steps_per_segment);
      if (stride < 1) stride = 1;
      for (int i = 0; i < intervals; i += stride) {
        const int j = std::min(i + stride, intervals);
        double area = 0.0;
        for (int k = i; k < j; ++k)
          area += 0.5 * (tab[k].omega + tab[k + 1].omega) * (tab[k + 1].u - tab[k].u);
        const double phase = seg.phase + 0.5 * (tab[i].phase + tab[j].phase);
        u = rot2(phase, (1.0 + epsilon) * area) * u;
        cb(start + tab[j].u, u, tab[j].omega, seg.phase + tab[j].phase);
      }
    } else {
      const double h = seg.duration / steps_per_segment;
      double cum0 = 0.0;
      for (int i = 1; i <= steps_per_segment; ++i) {
        const double u1 = i * h;
        const double cum1 = seg.envelope.cumulative(u1, seg.duration);
        u = rot2(seg.phase, (1.0 + epsilon) * (cum1 - cum0)) * u;
        cum0 = cum1;
        cb(start + u1, u, seg.envelope.value(u1, seg.duration), seg.phase);
      }
    }
    start += seg.duration;
  }
}

EvolutionResult evolve(const PulseSchedule& schedule, const ErrorModel& error,
                       int steps_per_segment, bool verify_steps) {
  const double eps = error.epsilon;
  if (!(std::abs(eps) < 1.0)) throw Error("|epsilon| must be < 1 (perturbative regime guard)");

  auto run = [&](int steps) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    long count = 0;
    evolve_grid(schedule, eps, steps,
                [&](double, const Eigen::Matrix2cd& cur, double, double) {
                  u = cur;
                  ++count;
                });
    return std::make_pair(u, count - 1);
  };

  auto [u, steps] = run(steps_per_segment);
  if (verify_steps) {
    auto [u2, steps2] = run(2 * steps_per_segment);
    (void)steps2;
    const double drift = std::abs(gate_fidelity(Matrix(u), Matrix(u2)) - 1.0);
    if (drift > 1e-8)
      throw StepTooCoarse("step halving changed fidelity by " + std::to_string(drift));
    u = u2;
  }
  EvolutionResult out{UnitaryMatrix{Matrix(u)}, steps, unitarity_defect(Matrix(u))};
  if (out.max_unitarity_defect > kUnitarityTol)
    throw EvolutionFailed("unitarity defect " + std::to_string(out.max_unitarity_defect));
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

SweepResult fidelity_sweep(const PulseSchedule& schedule, const Matrix& ideal,
                           const std::vector<double>& eps_grid, int steps_per_segment) {
  for (std::size_t i = 0; i < eps_grid.size(); ++i)
    for (std::size_t j = i + 1; j < eps_grid.size(); ++j)
      if (eps_grid[i] == eps_grid[j]) throw Error("epsilon grid values must be distinct");

  SweepResult out;
  out.points.resize(eps_grid.size());
  parallel_for(eps_grid.size(), [&](std::size_t i) {
    const EvolutionResult r = evolve(schedule, ErrorModel{ErrorModel::Kind::RabiProportional,
                                                          eps_grid[i]},
                                     steps_per_segment);
    out.points[i] = {eps_grid[i], gate_fidelity(r.final_unitary.m, ideal)};
  });

  // log-log least-squares slope of infidelity, guarding the numerical floor
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  double lo = 0, hi = 0;
  for (const auto& [eps, fid] : out.points) {
    const double infid = 1.0 - fid;
    if (!(eps > 0) || infid < 1e-12) continue;
    const double x = std::log(eps), y = std::log(infid);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (n == 0) {
      lo = hi = eps;
    } else {
      lo = std::min(lo, eps);
      hi = std::max(hi, eps);
    }
    ++n;
  }
  if (n < 3) throw DegenerateFit("fewer than 3 usable sweep points above the infidelity floor");
  out.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.fit_range = {lo, hi};
  return out;
}

double first_order_fidelity(const PulseSchedule& schedule, double epsilon,
                            int steps_per_segment) {
  const RobustnessMatrix m = robustness_matrix(schedule, steps_per_segment);
  const double sum = std::norm(m.d11) + std::norm(m.d12) + std::norm(m.d21) + std::norm(m.d22);
  return 1.0 - 0.25 * epsilon * epsilon * sum;
}

}  // namespace geomgate
