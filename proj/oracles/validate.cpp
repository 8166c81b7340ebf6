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

#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mmwcrlb/channel.hpp"
#include "mmwcrlb/codebook.hpp"
#include "mmwcrlb/fim_bayes.hpp"
#include "mmwcrlb/specfun.hpp"
#include "oracles.hpp"

namespace mmwcrlb::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

SuiteResult finish(std::string name, double worst, double tolerance, std::string detail = {}) {
  SuiteResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tolerance = tolerance;
  r.passed = std::isfinite(worst) && worst <= tolerance;
  r.detail = std::move(detail);
  return r;
}

PathSet random_paths(int paths, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> gain(0.3, 1.5);
  PathSet p;
  for (int l = 0; l < paths; ++l) {
    p.phi.push_back(angle(rng));
    p.psi.push_back(angle(rng));
    p.alpha.push_back(gain(rng));
  }
  return p;
}

}  // namespace

BuilderRoutes library_builder_routes() {
  return {[](BuilderKind k, const ArrayConfig& c, double a, std::optional<double> b) {
            return build_builder(k, c, a, b).entries;
          },
          [](BuilderKind k, const ArrayConfig& c, double a, std::optional<double> b) {
            return builder_elementwise(k, c, a, b);
          }};
}

SuiteResult validate_specfun() {
  double worst_j = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double z = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    // Enough nodes to resolve exp(j z cos t) at the top of the grid.
    const Quadrature rule(std::max(201, static_cast<int>(z) + 201), 0.0, kPi);
    for (int n = 0; n <= 2; ++n)
      worst_j = std::max(worst_j, std::abs(bessel_j(n, z) - quadrature_bessel_j(n, z, rule)));
    worst_j = std::max(worst_j, std::abs(integral_sin2_exp(z) - quadrature_sin2_exp(z, rule)));
    worst_j = std::max(worst_j, std::abs(integral_sin_exp(z) - quadrature_sin_exp(z, rule)));
  }
  double worst_i = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double x = 20.0 * i / 40.0;
    for (int n = 0; n <= 2; ++n) {
      const double s = series_bessel_i(n, x);
      worst_i = std::max(worst_i, std::abs(bessel_i(n, x) - s) / s);
    }
  }
  // Reported relative to each gate: 1e-9 absolute for J, 1e-10 relative for I.
  std::ostringstream detail;
  detail << "J abs " << worst_j << ", I rel " << worst_i;
  return finish("specfun", std::max(worst_j / 1e-9, worst_i / 1e-10), 1.0, detail.str());
}

SuiteResult validate_builders(const BuilderRoutes& routes, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  const ArrayConfig cfg{8, 8};
  double worst = 0.0;
  std::string where;
  for (BuilderKind kind : kAllBuilderKinds) {
    for (int d = 0; d < draws; ++d) {
      const double al = angle(rng);
      const double am = angle(rng);
      const Eigen::MatrixXcd a = routes.outer(kind, cfg, al, am);
      const Eigen::MatrixXcd b = routes.elementwise(kind, cfg, al, am);
      double err = (a - b).cwiseAbs().maxCoeff();
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
      if (sv[0] > 0.0 && sv[1] > 1e-10 * sv[0]) err = std::max(err, 1.0);
      if (err > worst) {
        worst = err;
        where = to_string(kind);
      }
    }
  }
  return finish("builders", worst, 1e-12, where.empty() ? "" : "worst kind " + where);
}

SuiteResult validate_expected_builders(const std::vector<int>& sizes) {
  const Quadrature rule;
  double worst = 0.0;
  std::string where;
  for (int n : sizes) {
    const ArrayConfig cfg{n, n};
    for (BuilderKind kind : kAllBuilderKinds) {
      const double err = (expected_builder(kind, cfg).entries -
                          quadrature_expected_builder(kind, n, rule))
                             .cwiseAbs()
                             .maxCoeff();
      if (err > worst) {
        worst = err;
        where = to_string(kind) + " n=" + std::to_string(n);
      }
    }
  }
  return finish("expected-builders", worst, 1e-9, where.empty() ? "" : "worst " + where);
}

SuiteResult validate_kron_trace(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random = [&](int r, int c) {
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
  };
  double worst = 0.0;
  for (int nt = 1; nt <= 4; ++nt)
    for (int nr = 1; nr <= 4; ++nr) {
      const Eigen::MatrixXcd k = random(nt * nr, nt * nr);
      const Eigen::MatrixXcd p = random(nt, nt);
      const Eigen::MatrixXcd q = random(nr, nr);
      worst = std::max(worst, std::abs(kron_trace(k, p, q) - brute_kron_trace(k, p, q)));
    }
  return finish("kron-trace", worst, 1e-10);
}

SuiteResult validate_fim_jacobian(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ArrayConfig cfg{4, 4};
  const CodebookMethod methods[] = {CodebookMethod::nonuniform, CodebookMethod::uniform,
                                    CodebookMethod::orthogonal};
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const SensingOperator op(make_codebook(cfg, methods[i % 3], 4, 4));
    const PathSet paths = random_paths(2, rng);
    const double sigma_v2 = 0.1 + 0.05 * i;
    const Eigen::MatrixXd j = assemble_fim_nonrandom(paths, op, sigma_v2).values;
    const Eigen::MatrixXd ref = jacobian_gram_fim(op, paths, sigma_v2);
    worst = std::max(worst, (j - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
  }
  return finish("fim-jacobian", worst, 1e-5);
}

SuiteResult validate_fim_data(long mc_draws, std::uint64_t seed) {
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::nonuniform, 4, 4));
  const double rice[] = {10.0, 3.0};
  const RiceProfile profile = normalize_profile(2, 0.5, rice);
  const double sigma_v2 = noise_variance(cfg, 10.0);
  const Eigen::MatrixXd jd = assemble_fim_data(profile, op, sigma_v2).values;
  const MatrixEstimate mc = mc_average_fim(profile, op, sigma_v2, mc_draws, seed);
  // Worst |difference| in units of standard errors.
  double worst = 0.0;
  const double floor = 1e-12 * jd.cwiseAbs().maxCoeff();
  for (Eigen::Index r = 0; r < jd.rows(); ++r)
    for (Eigen::Index c = 0; c < jd.cols(); ++c) {
      const double diff = std::abs(jd(r, c) - mc.mean(r, c));
      worst = std::max(worst, diff / std::max(mc.std_err(r, c), floor));
    }
  std::ostringstream detail;
  detail << mc_draws << " draws";
  return finish("fim-data-mc", worst, 3.0, detail.str());
}

SuiteResult validate_prior_limit(long mc_draws, std::uint64_t seed) {
  const double k = 1000.0;
  const double rice[] = {k};
  const RiceProfile profile = normalize_profile(1, 0.0, rice);
  const PriorTerm prior = prior_term(profile, mc_draws, seed);
  const double ref = gaussian_limit_prior(k, profile.omega[0]);
  return finish("prior-gaussian-limit", std::abs(prior.values[0] - ref) / ref, 0.10);
}

std::vector<SuiteResult> run_validation(const ValidationOptions& options) {
  return {validate_specfun(),
          validate_builders(),
          validate_expected_builders(),
          validate_kron_trace(),
          validate_fim_jacobian(),
          validate_fim_data(options.mc_draws, options.seed),
          validate_prior_limit(options.prior_draws, options.seed + 1)};
}

}  // namespace mmwcrlb::oracle
