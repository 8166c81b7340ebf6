// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The mmwave-crlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmwcrlb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHankelThreshold = 25.0;
constexpr double kSeriesThresholdI = 30.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Miller's algorithm; x > 0.
double bessel_j_miller(int n, double x) {
  const int top = std::max(n, static_cast<int>(x));
  int m = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
  if (m % 2) ++m;

  double next = 0.0;     // J_{k+1}
  double current = 1e-30;  // J_k, starting at k = m
  double norm = 2.0 * current;
  double result = (m == n) ? current : 0.0;

  for (int k = m; k >= 1; --k) {
    const double prev = (2.0 * k / x) * current - next;
    next = current;
    current = prev;
    if (std::abs(current) > 1e200) {
      current *= 1e-200;
      next *= 1e-200;
      norm *= 1e-200;
      result *= 1e-200;
    }
    const int order = k - 1;
    if (order == n) result = current;
    if (order % 2 == 0) norm += (order == 0 ? current : 2.0 * current);
  }
  return result / norm;
}

// Hankel asymptotic series for J_0 and J_1; x > kHankelThreshold.
void bessel_j01_hankel(double x, double& j0, double& j1) {
  auto pq = [x](double nu, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    p = 1.0;
    q = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double next = term * (mu - odd * odd) / (k * 8.0 * x);
      if (std::abs(next) > std::abs(term) && k > 2) break;
      term = next;
      const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
      if (k % 2) q += sign * term;
      else p += sign * term;
      if (std::abs(term) < 1e-17) break;
    }
  };
  double p0, q0, p1, q1;
  pq(0.0, p0, q0);
  pq(1.0, p1, q1);
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double r = std::sqrt(2.0 / (kPi * x)) / std::numbers::sqrt2;
  // cos(x - pi/4), sin(x - pi/4), cos(x - 3pi/4), sin(x - 3pi/4) without
  // subtracting rounded multiples of pi from x.
  j0 = r * (p0 * (c + s) - q0 * (s - c));
  j1 = r * (p1 * (s - c) - q1 * (-s - c));
}

double bessel_i_series_scaled(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  const double q = half * half;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * (m + n));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(-x);
}

double bessel_i_asymptotic_scaled(int n, double x) {
  const double mu = 4.0 * n * n;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

void check_i_order(int n) {
  if (n < 0 || n > 2)
    throw Error(ErrorCode::domain,
                "bessel_i: order " + std::to_string(n) + " not in {0,1,2}");
}

}  // namespace

double bessel_j(int n, double z) {
  if (n < 0) throw Error(ErrorCode::domain, "bessel_j: negative order");
  if (!std::isfinite(z))
    throw Error(ErrorCode::domain, "bessel_j: non-finite argument");
  const double x = std::abs(z);
  const double parity = (z < 0.0 && (n % 2)) ? -1.0 : 1.0;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;

  if (x <= kHankelThreshold || n >= x) return parity * bessel_j_miller(n, x);

  double j0, j1;
  bessel_j01_hankel(x, j0, j1);
  if (n == 0) return j0;
  double prev = j0;
  double cur = j1;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k / x) * cur - prev;
    prev = cur;
    cur = next;
  }
  return parity * cur;
}

double bessel_j_half(double z) {
  if (z == 0.0 || !std::isfinite(z))
    throw Error(ErrorCode::domain, "bessel_j_half: argument must be nonzero");
  // k*pi rounded to double lands within a few ulps of an integer after division.
  const double turns = z / kPi;
  const double nearest = std::nearbyint(turns);
  const bool on_zero = std::abs(turns - nearest) <= 8.0 * kEps * std::abs(turns);
  const double s = on_zero ? 0.0 : std::sin(z);
  return std::sqrt(2.0 / (kPi * std::abs(z))) * s;
}

double bessel_i_scaled(int n, double x) {
  check_i_order(n);
  if (!(x >= 0.0)) throw Error(ErrorCode::domain, "bessel_i: negative argument");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= kSeriesThresholdI) return bessel_i_series_scaled(n, x);
  return bessel_i_asymptotic_scaled(n, x);
}

double bessel_i(int n, double x) {
  check_i_order(n);
  if (!(x >= 0.0)) throw Error(ErrorCode::domain, "bessel_i: negative argument");
  if (x > 700.0) throw Error(ErrorCode::range, "bessel_i: argument above 700");
  return bessel_i_scaled(n, x) * std::exp(x);
}

std::complex<double> integral_sin2_exp(double z) {
  return {0.5 * (bessel_j(0, z) + bessel_j(2, z)), 0.0};
}

double integral_sin_exp(double z) {
  if (z == 0.0) return 2.0 / kPi;
  // integral_0^pi exp(j b cos t) sin t dt = sqrt(2 pi / b) J_{1/2}(b), b > 0;
  // the integrand's real part is even in b.
  const double b = std::abs(z);
  return std::sqrt(2.0 * kPi / b) * bessel_j_half(b) / kPi;
}

Quadrature::Quadrature() : Quadrature(201, 0.0, kPi) {}

Quadrature::Quadrature(int abscissa_count, double a, double b) : a_(a), b_(b) {
  if (abscissa_count < 1)
    throw Error(ErrorCode::domain, "Quadrature: abscissa_count must be positive");
  const int n = abscissa_count;
  nodes_.resize(n);
  weights_.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = mid - half * x;
    nodes_[n - 1 - i] = mid + half * x;
    weights_[i] = half * w;
    weights_[n - 1 - i] = half * w;
  }
}

}  // namespace mmwcrlb
