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

#include <functional>
#include <utility>
#include <vector>

#include "geomgate/linalg.hpp"
#include "geomgate/pulses.hpp"

namespace geomgate {

/// Quasi-static multiplicative Rabi amplitude error: H = (1+epsilon) H0.
struct ErrorModel {
  enum class Kind { RabiProportional };
  Kind kind = Kind::RabiProportional;
  double epsilon = 0.0;
};

struct EvolutionResult {
  UnitaryMatrix final_unitary;
  long steps = 0;
  double max_unitarity_defect = 0.0;
};

inline constexpr int kDefaultStepsPerSegment = 4096;

/// Grid evolution of the single-qubit drive. The callback receives every grid
/// node (t, U(t), omega(t), phase(t)); the first call is (0, I, ...). Segment
/// propagation uses the exact envelope integral per substep, so for
/// constant-phase segments the product is exact up to rounding.
void evolve_grid(const PulseSchedule& schedule, double epsilon, int steps_per_segment,
                 const std::function<void(double, const Eigen::Matrix2cd&, double, double)>& cb);

/// Full-schedule evolution; verify_steps re-runs at doubled resolution and
/// throws StepTooCoarse if the fidelity between the two passes shifts > 1e-8.
EvolutionResult evolve(const PulseSchedule& schedule, const ErrorModel& error,
                       int steps_per_segment = kDefaultStepsPerSegment, bool verify_steps = false);

struct SweepResult {
  std::vector<std::pair<double, double>> points;  // (epsilon, fidelity)
  double fitted_slope = 0.0;
  std::pair<double, double> fit_range{0.0, 0.0};
};

/// Per-epsilon gate fidelity against `ideal`, plus the log-log infidelity
/// slope over the usable points (1 - F > 1e-12).
SweepResult fidelity_sweep(const PulseSchedule& schedule, const Matrix& ideal,
                           const std::vector<double>& eps_grid,
                           int steps_per_segment = kDefaultStepsPerSegment);

std::vector<double> linspace(double lo, double hi, int n);

/// First-order perturbative fidelity 1 - (1/4) sum |D_mn|^2, valid to O(eps^4).
double first_order_fidelity(const PulseSchedule& schedule, double epsilon,
                            int steps_per_segment = kDefaultStepsPerSegment);

}  // namespace geomgate
