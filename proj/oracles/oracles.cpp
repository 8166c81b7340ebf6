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

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb::oracle {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cd kJ{0.0, 1.0};

Eigen::VectorXcd steering(int n, double angle) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v[k] = std::exp(-kJ * kPi * double(k) * std::cos(angle));
  return v / std::sqrt(double(n));
}

Eigen::VectorXcd weighted(int n, double angle) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k)
    v[k] = double(k) * std::exp(kJ * kPi * double(k) * std::cos(angle));
  return v / std::sqrt(double(n));
}

struct Side {
  Eigen::VectorXcd e;
  Eigen::VectorXcd w;
  double s;
};

Side side(int n, double angle) { return {steering(n, angle), weighted(n, angle), std::sin(angle)}; }

Eigen::MatrixXcd outer(BuilderKind kind, const Side& l, const Side& m) {
  switch (kind) {
    case BuilderKind::P: return l.s * l.s * l.w * l.w.adjoint();
    case BuilderKind::P2: return l.s * l.e.conjugate() * l.w.adjoint();
    case BuilderKind::P3: return l.s * l.w * l.e.transpose();
    case BuilderKind::P4: return l.e.conjugate() * l.e.transpose();
    case BuilderKind::P5: return l.s * m.e.conjugate() * l.w.adjoint();
    case BuilderKind::P6: return m.e.conjugate() * l.e.transpose();
    case BuilderKind::P7: return l.s * m.s * m.w * l.w.adjoint();
    case BuilderKind::P8: return l.e.conjugate() * m.e.transpose();
    case BuilderKind::P9: return l.s * l.w * m.e.transpose();
    case BuilderKind::Q: return l.e * l.e.adjoint();
    case BuilderKind::Q2: return l.s * l.e * l.w.transpose();
    case BuilderKind::Q3: return m.e * l.e.adjoint();
    case BuilderKind::Q4: return l.s * m.e * l.w.transpose();
    case BuilderKind::Q5: return l.s * m.s * l.w.conjugate() * m.w.transpose();
    case BuilderKind::Q6: return l.s * l.s * l.w.conjugate() * l.w.transpose();
    case BuilderKind::Q7: return m.s * l.e * m.w.transpose();
  }
  return {};
}

double laplace_det(const Eigen::MatrixXd& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return m(rows[0], cols[0]);
  const int r = rows.front();
  rows.erase(rows.begin());
  double det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const int c = cols[j];
    if (m(r, c) != 0.0) {
      cols.erase(cols.begin() + j);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      det += sign * m(r, c) * laplace_det(m, rows, cols);
      cols.insert(cols.begin() + j, c);
    }
  }
  rows.insert(rows.begin(), r);
  return det;
}

}  // namespace

double quadrature_bessel_j(int n, double z, const Quadrature& rule) {
  const cd integral =
      rule.integrate([&](double t) { return std::exp(kJ * z * std::cos(t)) * std::cos(n * t); });
  return (integral / (kPi * std::pow(kJ, n))).real();
}

std::complex<double> quadrature_sin2_exp(double z, const Quadrature& rule) {
  return rule.integrate([&](double t) {
           return std::sin(t) * std::sin(t) * std::exp(kJ * z * std::cos(t));
         }) / kPi;
}

std::complex<double> quadrature_sin_exp(double z, const Quadrature& rule) {
  return rule.integrate([&](double t) { return std::sin(t) * std::exp(kJ * z * std::cos(t)); }) /
         kPi;
}

double series_bessel_i(int n, double x, int terms) {
  double sum = 0.0;
  for (int m = 0; m < terms; ++m)
    sum += std::exp((2 * m + n) * std::log(x / 2) - std::lgamma(m + 1.0) - std::lgamma(m + n + 1.0));
  return x == 0.0 ? (n == 0 ? 1.0 : 0.0) : sum;
}

Eigen::MatrixXcd reference_builder(BuilderKind kind, int n, double angle_l,
                                   std::optional<double> angle_m) {
  return outer(kind, side(n, angle_l), side(n, angle_m.value_or(angle_l)));
}

Eigen::MatrixXcd quadrature_expected_builder(BuilderKind kind, int n, const Quadrature& rule) {
  std::vector<Side> nodes;
  for (double t : rule.nodes()) nodes.push_back(side(n, t));
  const auto& w = rule.weights();
  const double span = rule.upper() - rule.lower();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  if (!is_two_path_kind(kind)) {
    for (int i = 0; i < rule.size(); ++i) sum += w[i] * outer(kind, nodes[i], nodes[i]);
    return sum / span;
  }
  for (int i = 0; i < rule.size(); ++i)
    for (int k = 0; k < rule.size(); ++k)
      sum += (w[i] * w[k]) * outer(kind, nodes[i], nodes[k]);
  return sum / (span * span);
}

std::complex<double> brute_kron_trace(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& p,
                                      const Eigen::MatrixXcd& q) {
  Eigen::MatrixXcd pq(p.rows() * q.rows(), p.cols() * q.cols());
  for (Eigen::Index a = 0; a < p.rows(); ++a)
    for (Eigen::Index b = 0; b < q.rows(); ++b)
      for (Eigen::Index c = 0; c < p.cols(); ++c)
        for (Eigen::Index d = 0; d < q.cols(); ++d)
          pq(a * q.rows() + b, c * q.cols() + d) = p(a, c) * q(b, d);
  return (k * pq).trace();
}

Eigen::VectorXcd reference_observation(const SensingOperator& op, const PathSet& paths) {
  const ArrayConfig cfg = op.array();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(cfg.n_r, cfg.n_t);
  for (int l = 0; l < paths.paths(); ++l)
    h += paths.alpha[l] * steering(cfg.n_r, paths.psi[l]) * steering(cfg.n_t, paths.phi[l]).adjoint();
  return op.A() * Eigen::Map<const Eigen::VectorXcd>(h.data(), h.size());
}

Eigen::MatrixXcd fd_jacobian(const SensingOperator& op, const PathSet& paths, double step) {
  const ParamIndex index(paths.paths());
  Eigen::MatrixXcd jac(op.observations(), index.size());
  for (int i = 0; i < index.size(); ++i) {
    const ParamId id = index.id(i);
    auto shifted = [&](double delta) {
      PathSet p = paths;
      auto& v = id.kind == ParamKind::phi ? p.phi : id.kind == ParamKind::psi ? p.psi : p.alpha;
      v[id.path] += delta;
      return reference_observation(op, p);
    };
    jac.col(i) = (shifted(step) - shifted(-step)) / (2.0 * step);
  }
  return jac;
}

Eigen::MatrixXd jacobian_gram_fim(const SensingOperator& op, const PathSet& paths,
                                  double sigma_v2) {
  const Eigen::MatrixXcd jac = fd_jacobian(op, paths);
  return (2.0 / sigma_v2) * (jac.adjoint() * jac).real();
}

MatrixEstimate mc_average_fim(const RiceProfile& profile, const SensingOperator& op,
                              double sigma_v2, long draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int order = 3 * profile.paths();
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(order, order);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(order, order);
  for (long d = 1; d <= draws; ++d) {
    const PathSet paths = sample_paths(profile, rng);
    const Eigen::MatrixXd x = assemble_fim_nonrandom(paths, op, sigma_v2).values;
    const Eigen::MatrixXd delta = x - mean;
    mean += delta / double(d);
    m2 += delta.cwiseProduct(x - mean);
  }
  MatrixEstimate out;
  out.mean = mean;
  out.std_err = (m2 / double(draws - 1) / double(draws)).cwiseSqrt();
  out.draws = draws;
  return out;
}

Eigen::MatrixXd adjugate_inverse(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n < 1 || n > 8)
    throw Error(ErrorCode::dimension_mismatch, "adjugate_inverse: square, order 1..8");
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<int> rows = all, cols = all;
  const double det = laplace_det(m, rows, cols);
  if (n == 1) return Eigen::MatrixXd::Constant(1, 1, 1.0 / det);
  Eigen::MatrixXd inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> r, c;
      for (int k = 0; k < n; ++k) {
        if (k != j) r.push_back(k);
        if (k != i) c.push_back(k);
      }
      // inv(i, j) = cofactor(j, i) / det
      inv(i, j) = (((i + j) % 2 == 0) ? 1.0 : -1.0) * laplace_det(m, r, c) / det;
    }
  return inv;
}

double rician_mean_closed_form(double rice_factor, double omega) {
  const double k = rice_factor;
  const double sigma = std::sqrt(omega / (1.0 + k));
  return sigma * std::sqrt(kPi) / 2.0 *
         ((1.0 + k) * bessel_i_scaled(0, k / 2) + k * bessel_i_scaled(1, k / 2));
}

double gaussian_limit_prior(double rice_factor, double omega) {
  return 2.0 * (rice_factor + 1.0) / omega;
}

}  // namespace mmwcrlb::oracle
