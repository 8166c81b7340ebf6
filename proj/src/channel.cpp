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

#include "mmwcrlb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/specfun.hpp"

namespace mmwcrlb {

RiceProfile normalize_profile(int paths, double delta, std::span<const double> rice_factor) {
  if (paths < 1) throw Error(ErrorCode::config, "profile: need at least one path");
  if (!(delta >= 0.0)) throw Error(ErrorCode::config, "profile: delta must be >= 0");
  if (static_cast<int>(rice_factor.size()) != paths)
    throw Error(ErrorCode::config, "profile: expected " + std::to_string(paths) +
                                       " Rice factors, got " +
                                       std::to_string(rice_factor.size()));
  double total = 0.0;
  for (int l = 0; l < paths; ++l) total += std::exp(-l * delta);

  RiceProfile p;
  p.delta = delta;
  const double omega1 = 1.0 / total;
  for (int l = 0; l < paths; ++l) {
    const double k = rice_factor[l];
    if (!(k >= 0.0) || !std::isfinite(k))
      throw Error(ErrorCode::config, "profile: Rice factor must be finite and >= 0");
    const double omega = omega1 * std::exp(-l * delta);
    const double sigma2 = omega / (1.0 + k);
    p.rice_factor.push_back(k);
    p.omega.push_back(omega);
    p.sigma2.push_back(sigma2);
    p.mu.push_back(std::sqrt(k * sigma2));
  }
  return p;
}

void PathSet::validate() const {
  if (phi.size() != alpha.size() || psi.size() != alpha.size())
    throw Error(ErrorCode::dimension_mismatch, "PathSet: phi/psi/alpha lengths differ");
  for (double a : alpha)
    if (!(a > 0.0)) throw Error(ErrorCode::domain, "PathSet: gains must be positive");
}

double noise_variance(const ArrayConfig& cfg, double snr_db) {
  return static_cast<double>(cfg.n_t) * cfg.n_r / std::pow(10.0, snr_db / 10.0);
}

double sample_rician(double mu, double sigma2, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = std::sqrt(0.5 * sigma2);
  const double re = mu + s * normal(rng);
  const double im = s * normal(rng);
  return std::hypot(re, im);
}

PathSet sample_paths(const RiceProfile& profile, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  PathSet out;
  const int paths = profile.paths();
  out.phi.reserve(paths);
  out.psi.reserve(paths);
  out.alpha.reserve(paths);
  for (int l = 0; l < paths; ++l) {
    out.phi.push_back(angle(rng));
    out.psi.push_back(angle(rng));
    out.alpha.push_back(sample_rician(profile.mu[l], profile.sigma2[l], rng));
  }
  return out;
}

PathSet sample_paths(const RiceProfile& profile, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_paths(profile, rng);
}

double rician_pdf(double a, double rice_factor, double omega) {
  if (a <= 0.0) return 0.0;
  const double k = rice_factor;
  const double c = (k + 1.0) / omega;
  const double x = 2.0 * a * std::sqrt(k * c);
  // exp(-c a^2 - K) I_0(x) == exp(-(sqrt(c) a - sqrt(K))^2) * I_0(x) e^{-x}
  const double d = std::sqrt(c) * a - std::sqrt(k);
  return 2.0 * c * a * std::exp(-d * d) * bessel_i_scaled(0, x);
}

double rician_mean(double rice_factor, double omega) {
  const double sigma2 = omega / (1.0 + rice_factor);
  const double mu = std::sqrt(rice_factor * sigma2);
  const double sigma = std::sqrt(sigma2);
  const double lo = std::max(0.0, mu - 12.0 * sigma);
  const double hi = mu + 12.0 * sigma;
  constexpr int kPanels = 8;
  const double h = (hi - lo) / kPanels;
  double sum = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const Quadrature rule(64, lo + i * h, lo + (i + 1) * h);
    sum += rule.integrate([&](double a) { return a * rician_pdf(a, rice_factor, omega); });
  }
  return sum;
}

Eigen::MatrixXcd channel_matrix(const ArrayConfig& cfg, const PathSet& paths) {
  paths.validate();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(cfg.n_r, cfg.n_t);
  for (int l = 0; l < paths.paths(); ++l)
    h += paths.alpha[l] * steer_rx(cfg, paths.psi[l]) * steer_tx(cfg, paths.phi[l]).adjoint();
  return h;
}

Eigen::VectorXcd observation_mean(const SensingOperator& op, const PathSet& paths) {
  if (paths.phi.size() != paths.alpha.size() || paths.psi.size() != paths.alpha.size())
    throw Error(ErrorCode::dimension_mismatch, "observation_mean: PathSet lengths differ");
  const ArrayConfig cfg = op.array();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(cfg.n_t * cfg.n_r);
  for (int l = 0; l < paths.paths(); ++l) {
    const Eigen::VectorXcd et = steer_tx(cfg, paths.phi[l]).conjugate();
    const Eigen::VectorXcd er = steer_rx(cfg, paths.psi[l]);
    for (int a = 0; a < cfg.n_t; ++a)
      x.segment(a * cfg.n_r, cfg.n_r) += paths.alpha[l] * et[a] * er;
  }
  return op.A() * x;
}

double log_likelihood(const SensingOperator& op, const PathSet& paths,
                      const Eigen::VectorXcd& y, double sigma_v2) {
  if (!(sigma_v2 > 0.0))
    throw Error(ErrorCode::domain, "log_likelihood: noise variance must be positive");
  if (y.size() != op.observations())
    throw Error(ErrorCode::dimension_mismatch, "log_likelihood: observation length");
  const Eigen::VectorXcd r = y - observation_mean(op, paths);
  return -op.observations() * std::log(std::numbers::pi * sigma_v2) -
         r.squaredNorm() / sigma_v2;
}

}  // namespace mmwcrlb
