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

#pragma once

#include <complex>
#include <vector>

namespace mmwcrlb {

/// Bessel function of the first kind J_n(z) for integer order n >= 0 and real
/// z with |z| <= 1e4.
///
/// Algorithm: for |z| <= 25, or when n >= |z|, Miller's backward recurrence
/// normalised with J_0 + 2*sum J_2k = 1. Otherwise J_0 and J_1 come from the
/// Hankel asymptotic expansion and J_n from upward recurrence, which is stable
/// for n < |z|. Absolute accuracy is about 1e-13 on |z| <= 1e3.
double bessel_j(int n, double z);

/// Half-order Bessel function J_{1/2}(z) = sqrt(2/(pi z)) sin z.
///
/// For z < 0 the real continuation sqrt(2/(pi |z|)) sin z is returned.
/// Integer multiples of pi map to exactly 0. Throws ErrorCode::domain at z = 0.
double bessel_j_half(double z);

/// Modified Bessel function I_n(x), n in {0, 1, 2}, 0 <= x <= 700.
/// Throws ErrorCode::domain for other orders or x < 0, ErrorCode::range
/// for x > 700.
double bessel_i(int n, double x);

/// Exponentially scaled I_n(x) * exp(-x); defined for every x >= 0 and used
/// wherever ratios of I-functions at large arguments are needed.
double bessel_i_scaled(int n, double x);

/// (1/pi) * integral_0^pi sin^2(t) exp(j z cos t) dt = (J_0(z) + J_2(z)) / 2.
/// The imaginary part is identically zero.
std::complex<double> integral_sin2_exp(double z);

/// (1/pi) * integral_0^pi sin(t) exp(j z cos t) dt = 2 sin(z) / (pi z),
/// evaluated through J_{1/2}; 2/pi at z = 0.
double integral_sin_exp(double z);

/// Fixed-order Gauss-Legendre rule mapped to [a, b].
class Quadrature {
 public:
  /// Default rule: 201 nodes on [0, pi].
  Quadrature();
  Quadrature(int abscissa_count, double a, double b);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double lower() const { return a_; }
  double upper() const { return b_; }

  template <typename F>
  auto integrate(F&& f) const -> decltype(f(0.0)) {
    decltype(f(0.0)) sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  double a_;
  double b_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace mmwcrlb
