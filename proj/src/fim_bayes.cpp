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

#include "mmwcrlb/fim_bayes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/specfun.hpp"

namespace mmwcrlb {

namespace {

constexpr double kPi = std::numbers::pi;

// E[exp(j pi k cos t)] = J_0(pi k).
double e0(int k) { return bessel_j(0, kPi * k); }
// E[sin^2 t exp(j pi k cos t)].
double e2(int k) { return integral_sin2_exp(kPi * k).real(); }
// E[sin t exp(j pi k cos t)]: 2/pi at k = 0, zero at every other integer.
double es(int k) { return integral_sin_exp(kPi * k); }

void check_rice(double rice_factor) {
  if (rice_factor == 0.0)
    throw Error(ErrorCode::rayleigh_divergence,
                "Rice factor 0 (Rayleigh): E[1/a^2] and the prior Fisher term diverge");
  if (!(rice_factor > 0.0) || !std::isfinite(rice_factor))
    throw Error(ErrorCode::domain, "Rice factor must be finite and positive");
}

}  // namespace

ExpectedBuilder expected_builder(BuilderKind kind, const ArrayConfig& cfg) {
  cfg.validate();
  const int n = is_transmit_kind(kind) ? cfg.n_t : cfg.n_r;
  const double inv_n = 1.0 / n;
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const double rs = static_cast<double>(r) * s;
      double v = 0.0;
      switch (kind) {
        case BuilderKind::P: v = rs * e2(r - s); break;
        case BuilderKind::P2: v = s * es(r - s); break;
        case BuilderKind::P3: v = r * es(r - s); break;
        case BuilderKind::P4: v = e0(r - s); break;
        case BuilderKind::P5: v = s * e0(r) * es(-s); break;
        case BuilderKind::P6: v = e0(r) * e0(-s); break;
        case BuilderKind::P7: v = rs * es(r) * es(-s); break;
        case BuilderKind::P8: v = e0(r) * e0(-s); break;
        case BuilderKind::P9: v = r * es(r) * e0(-s); break;
        case BuilderKind::Q: v = e0(s - r); break;
        case BuilderKind::Q2: v = s * es(s - r); break;
        case BuilderKind::Q3: v = e0(-r) * e0(s); break;
        case BuilderKind::Q4: v = s * e0(-r) * es(s); break;
        case BuilderKind::Q5: v = rs * es(-r) * es(s); break;
        case BuilderKind::Q6: v = rs * e2(s - r); break;
        case BuilderKind::Q7: v = s * e0(-r) * es(s); break;
      }
      m(r, s) = inv_n * v;
    }
  }
  return {kind, std::move(m)};
}

double rician_log_curvature(double a, double rice_factor, double omega) {
  const double k = rice_factor;
  const double b = 2.0 * std::sqrt(k * (k + 1.0) / omega);
  const double x = b * a;
  const double i0 = bessel_i_scaled(0, x);
  const double r1 = bessel_i_scaled(1, x) / i0;
  const double r2 = bessel_i_scaled(2, x) / i0;
  const double bracket = 1.0 + r2 - 2.0 * r1 * r1;
  const double d2 =
      -1.0 / (a * a) - 2.0 * (k + 1.0) / omega + 2.0 * k * (k + 1.0) / omega * bracket;
  return -d2;
}

PriorTerm prior_term(const RiceProfile& profile, long mc_draws, std::uint64_t seed,
                     int workers) {
  if (mc_draws < 1000)
    throw Error(ErrorCode::config, "prior term needs at least 1000 Monte-Carlo draws");
  for (double k : profile.rice_factor) check_rice(k);
  PriorTerm out;
  out.mc_draws = mc_draws;
  for (int l = 0; l < profile.paths(); ++l) {
    const double k = profile.rice_factor[l];
    const double omega = profile.omega[l];
    const double mu = profile.mu[l];
    const double s2 = profile.sigma2[l];
    const MonteCarloEstimate est = mc_estimate(
        mc_draws, derive_seed(seed, static_cast<std::uint64_t>(l)),
        [&](std::mt19937_64& rng) {
          return rician_log_curvature(sample_rician(mu, s2, rng), k, omega);
        },
        workers);
    out.values.push_back(est.mean);
    out.std_err.push_back(est.std_err);
  }
  return out;
}

FisherMatrix assemble_fim_data(const RiceProfile& profile, const SensingOperator& op,
                               double sigma_v2) {
  if (!(sigma_v2 > 0.0)) throw Error(ErrorCode::domain, "noise variance must be positive");
  const int paths = profile.paths();
  if (paths < 1) throw Error(ErrorCode::config, "profile has no paths");
  const ArrayConfig cfg = op.array();

  detail::GainMoments gains;
  for (int l = 0; l < paths; ++l) {
    gains.first.push_back(rician_mean(profile.rice_factor[l], profile.omega[l]));
    gains.second.push_back(profile.omega[l]);
  }
  std::map<BuilderKind, Eigen::MatrixXcd> cache;
  for (BuilderKind kind : kAllBuilderKinds) cache[kind] = expected_builder(kind, cfg).entries;
  const detail::BuilderSource source = [&cache](BuilderKind kind, int, int) {
    return cache.at(kind);
  };
  return {detail::assemble(paths, gains, source, op.K(), sigma_v2), ParamIndex(paths),
          FisherKind::bayesian_data};
}

FisherMatrix assemble_fim_bayesian(const RiceProfile& profile, const SensingOperator& op,
                                   double sigma_v2, const PriorTerm& prior) {
  if (static_cast<int>(prior.values.size()) != profile.paths())
    throw Error(ErrorCode::dimension_mismatch, "prior term length differs from path count");
  FisherMatrix j = assemble_fim_data(profile, op, sigma_v2);
  for (int l = 0; l < profile.paths(); ++l) {
    const int i = j.index.flat({ParamKind::alpha, l});
    j.values(i, i) += prior.values[l];
  }
  j.kind = FisherKind::bayesian_total;
  return j;
}

FisherMatrix assemble_fim_bayesian(const RiceProfile& profile, const SensingOperator& op,
                                   double sigma_v2, long mc_draws, std::uint64_t seed,
                                   int workers) {
  return assemble_fim_bayesian(profile, op, sigma_v2,
                               prior_term(profile, mc_draws, seed, workers));
}

MonteCarloEstimate inverse_second_moment(double rice_factor, double omega, long mc_draws,
                                         std::uint64_t seed, int workers) {
  check_rice(rice_factor);
  if (!(omega > 0.0)) throw Error(ErrorCode::domain, "second moment must be positive");
  const double sigma2 = omega / (1.0 + rice_factor);
  const double mu = std::sqrt(rice_factor * sigma2);
  return mc_estimate(
      mc_draws, seed,
      [&](std::mt19937_64& rng) {
        const double a = sample_rician(mu, sigma2, rng);
        return 1.0 / (a * a);
      },
      workers);
}

}  // namespace mmwcrlb
