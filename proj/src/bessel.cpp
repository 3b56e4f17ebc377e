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

#include "geomgate/bessel.hpp"

#include <cmath>
#include <cstdlib>

#include "geomgate/errors.hpp"

namespace geomgate {

namespace {

// Power series J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!), n >= 0.
// Well conditioned for the |x| <= 2 range this toolkit uses.
double series_jn(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;  // (x/2)^n / n!
  double sum = term;
  const double h2 = -h * h;
  for (int k = 1; k < 80; ++k) {
    term *= h2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller's downward recurrence, normalized with J_0 + 2*sum J_{2k} = 1.
std::vector<double> miller_jn(int nmax, double x) {
  const int start = nmax + 16 + static_cast<int>(std::abs(x));
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  for (int k = start; k >= 1; --k) j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  j.resize(nmax + 1);
  for (double& v : j) v /= norm;
  return j;
}

}  // namespace

std::vector<double> bessel_j_upto(int nmax, double x) {
  if (std::abs(x) < 0.5) {
    std::vector<double> out(nmax + 1);
    const double ax = std::abs(x);
    for (int n = 0; n <= nmax; ++n) {
      double v = series_jn(n, ax);
      if (x < 0 && (n % 2)) v = -v;
      out[n] = v;
    }
    return out;
  }
  std::vector<double> out = miller_jn(nmax, std::abs(x));
  if (x < 0)
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
  return out;
}

double bessel_j(int n, double x) {
  const int an = std::abs(n);
  double v = bessel_j_upto(an, x)[an];
  if (n < 0 && (an % 2)) v = -v;  // J_{-n} = (-1)^n J_n
  return v;
}

double bessel_j1_prime(double x) {
  if (x == 0.0) return 0.5;
  return bessel_j(0, x) - bessel_j(1, x) / x;
}

double bessel_j1_inverse(double y) {
  if (!(y > 0.0) || y > kBesselJ1Peak)
    throw AmplitudeUnreachable("J1 target " + std::to_string(y) + " outside (0, " +
                               std::to_string(kBesselJ1Peak) + "]");
  double lo = 0.0, hi = kBesselJ1PeakArg;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j(1, mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace geomgate
