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

namespace geomgate {

/// Bessel function of the first kind J_n(x) for integer order (n may be negative).
/// Downward (Miller) recurrence, power series for small |x|.
double bessel_j(int n, double x);

/// J_0 .. J_nmax in one recurrence pass.
std::vector<double> bessel_j_upto(int nmax, double x);

/// dJ_1/dx = J_0(x) - J_1(x)/x.
double bessel_j1_prime(double x);

/// First positive maximum of J_1 (monotone-branch endpoint).
inline constexpr double kBesselJ1PeakArg = 1.8411837813406593;
inline constexpr double kBesselJ1Peak = 0.5818652242732262;

/// Inverse of J_1 restricted to the monotone branch x in (0, kBesselJ1PeakArg].
/// Throws AmplitudeUnreachable if y is outside (0, kBesselJ1Peak].
double bessel_j1_inverse(double y);

}  // namespace geomgate
