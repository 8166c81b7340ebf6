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

// Reference implementations used only to check the library: slow, direct
// transcriptions of the defining integrals, derivatives and inverses.

#include <complex>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "mmwcrlb/channel.hpp"
#include "mmwcrlb/codebook.hpp"
#include "mmwcrlb/fim_core.hpp"
#include "mmwcrlb/specfun.hpp"

namespace mmwcrlb::oracle {

/// Re[(1/(pi j^n)) * integral_0^pi exp(j z cos t) cos(n t) dt].
double quadrature_bessel_j(int n, double z, const Quadrature& rule = Quadrature());

/// (1/pi) * integral_0^pi sin^2(t) exp(j z cos t) dt.
std::complex<double> quadrature_sin2_exp(double z, const Quadrature& rule = Quadrature());

/// (1/pi) * integral_0^pi sin(t) exp(j z cos t) dt.
std::complex<double> quadrature_sin_exp(double z, const Quadrature& rule = Quadrature());

/// Ascending series sum_m (x/2)^(2m+n) / (m! (m+n)!).
double series_bessel_i(int n, double x, int terms = 30);

/// Builder matrix written out from freshly computed steering vectors.
Eigen::MatrixXcd reference_builder(BuilderKind kind, int n, double angle_l,
                                   std::optional<double> angle_m);

/// Average of reference_builder over every angle it depends on, using the
/// given rule on each axis (tensor grid for two-path kinds).
Eigen::MatrixXcd quadrature_expected_builder(BuilderKind kind, int n,
                                             const Quadrature& rule = Quadrature());

/// tr[K (P kron Q)] with the Kronecker product formed explicitly.
std::complex<double> brute_kron_trace(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& p,
                                      const Eigen::MatrixXcd& q);

/// Noise-free observation A vec(H), H built from reference steering vectors.
Eigen::VectorXcd reference_observation(const SensingOperator& op, const PathSet& paths);

/// Central-difference Jacobian of the observation mean, one column per
/// parameter in ParamIndex order.
Eigen::MatrixXcd fd_jacobian(const SensingOperator& op, const PathSet& paths,
                             double step = 1e-6);

/// (2 / sigma_v^2) Re[J^H J] from the finite-difference Jacobian.
Eigen::MatrixXd jacobian_gram_fim(const SensingOperator& op, const PathSet& paths,
                                  double sigma_v2);

struct MatrixEstimate {
  Eigen::MatrixXd mean;
  Eigen::MatrixXd std_err;
  long draws = 0;
};

/// Entrywise Monte-Carlo average of the non-random Fisher matrix over prior
/// draws of the paths.
MatrixEstimate mc_average_fim(const RiceProfile& profile, const SensingOperator& op,
                              double sigma_v2, long draws, std::uint64_t seed);

/// Inverse through cofactors, determinants by Laplace expansion. n <= 8.
Eigen::MatrixXd adjugate_inverse(const Eigen::MatrixXd& m);

/// E[a] = sigma sqrt(pi)/2 * exp(-K/2) [(1+K) I_0(K/2) + K I_1(K/2)].
double rician_mean_closed_form(double rice_factor, double omega);

/// Fisher information of the gain when the envelope is nearly Gaussian.
double gaussian_limit_prior(double rice_factor, double omega);

}  // namespace mmwcrlb::oracle
