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

#include <cmath>

#include "doctest.h"
#include "geomgate/bessel.hpp"
#include "geomgate/errors.hpp"

using namespace geomgate;

namespace {
// Independent power-series oracle, written without reference to the
// implementation's recurrence path.
double series_oracle(int n, double x) {
  double sign = 1.0;
  int order = n;
  if (order < 0) {
    order = -order;
    if (order % 2) sign = -sign;
  }
  if (x < 0) {
    x = -x;
    if (order % 2) sign = -sign;
  }
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= h / k;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -h * h / (static_cast<double>(k) * (order + k));
    sum += term;
  }
  return sign * sum;
}
}  // namespace

TEST_CASE("bessel_j against the power-series oracle") {
  for (double x : {0.05, 0.1, 0.3, 0.7, 1.0, 1.2, 1.5, 1.8412, 2.0}) {
    for (int n = -25; n <= 25; ++n) {
      CHECK(std::abs(bessel_j(n, x) - series_oracle(n, x)) < 1e-12);
      CHECK(std::abs(bessel_j(n, -x) - series_oracle(n, -x)) < 1e-12);
    }
  }
}

TEST_CASE("reference values") {
  CHECK(bessel_j(1, 0.1) == doctest::Approx(0.049937526).epsilon(1e-6));
  // recurrence identities for the derivative
  const double d1 = bessel_j1_prime(1.2);
  const double d2 = 0.5 * (bessel_j(0, 1.2) - bessel_j(2, 1.2));
  CHECK(std::abs(d1 - d2) < 1e-12);
  CHECK(d1 == doctest::Approx(0.255892).epsilon(1e-5));
}

TEST_CASE("sum rule: J0^2 + 2 sum J_m^2 = 1") {
  for (double x : {0.5, 1.0, 1.8}) {
    const auto j = bessel_j_upto(40, x);
    double s = j[0] * j[0];
    for (int m = 1; m <= 40; ++m) s += 2.0 * j[m] * j[m];
    CHECK(std::abs(s - 1.0) < 1e-10);
  }
}

TEST_CASE("monotone-branch inverse") {
  for (double x : {0.2, 0.8, 1.3, 1.8}) {
    CHECK(bessel_j1_inverse(bessel_j(1, x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK_THROWS_AS(bessel_j1_inverse(0.60), AmplitudeUnreachable);
  CHECK_THROWS_AS(bessel_j1_inverse(-0.1), AmplitudeUnreachable);
}
