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

#include <vector>

#include "geomgate/pulses.hpp"

namespace geomgate {

/// Published |D12/eps| reference values for the robustness-integral table,
/// with per-entry comparison tolerances.
struct RobustnessReference {
  Scheme scheme;
  Gate gate;
  double value;
  double tolerance;
};

inline const std::vector<RobustnessReference>& robustness_reference_table() {
  static const std::vector<RobustnessReference> table = {
      {Scheme::SR_NGQG, Gate::X, 0.00, 0.03},
      {Scheme::NGQG_P1, Gate::X, 0.65, 0.03},
      {Scheme::NGQG_P2, Gate::X, 1.57, 0.03},
      {Scheme::DYNAMICAL, Gate::X, 1.57, 0.03},
      {Scheme::SSSP, Gate::X, 0.25, 0.05},
      {Scheme::SR_NGQG, Gate::XHalf, 0.47, 0.03},
      {Scheme::NGQG_P1, Gate::XHalf, 0.45, 0.03},
      {Scheme::NGQG_P2, Gate::XHalf, 2.67, 0.03},
      {Scheme::DYNAMICAL, Gate::XHalf, 0.78, 0.03},
  };
  return table;
}

}  // namespace geomgate
