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

#include "mmwcrlb/codebook.hpp"

#include <cmath>
#include <numbers>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

std::string to_string(CodebookMethod method) {
  switch (method) {
    case CodebookMethod::nonuniform: return "nonuniform";
    case CodebookMethod::uniform: return "uniform";
    case CodebookMethod::orthogonal: return "orthogonal";
  }
  return "unknown";
}

CodebookMethod parse_codebook_method(std::string_view name) {
  if (name == "nonuniform") return CodebookMethod::nonuniform;
  if (name == "uniform") return CodebookMethod::uniform;
  if (name == "orthogonal") return CodebookMethod::orthogonal;
  throw Error(ErrorCode::config, "unknown codebook method '" + std::string(name) + "'");
}

namespace {

// Center of bin i out of m equal bins over [lo, hi).
double bin_center(int i, int m, double lo, double hi) {
  return lo + (i + 0.5) * (hi - lo) / m;
}

}  // namespace

std::vector<double> codebook_angles(CodebookMethod method, int elements, int beams) {
  if (beams < 1) throw Error(ErrorCode::config, "codebook: pilot count must be >= 1");
  std::vector<double> angles(beams);
  switch (method) {
    case CodebookMethod::nonuniform:
      for (int i = 0; i < beams; ++i)
        angles[i] = std::acos(bin_center(i, beams, -1.0, 1.0));
      break;
    case CodebookMethod::uniform:
      for (int i = 0; i < beams; ++i)
        angles[i] = bin_center(i, beams, 0.0, std::numbers::pi);
      break;
    case CodebookMethod::orthogonal:
      if (beams > elements)
        throw Error(ErrorCode::unsupported_config,
                    "orthogonal codebook needs pilots <= elements (" +
                        std::to_string(beams) + " > " + std::to_string(elements) + ")");
      // Cosines spaced 2/n apart: the n-point lattice, truncated to `beams`.
      for (int k = 0; k < beams; ++k)
        angles[k] = std::acos(-1.0 + (2.0 * k + 1.0) / elements);
      break;
  }
  return angles;
}

Codebook make_codebook(const ArrayConfig& cfg, CodebookMethod method, int p_t, int p_r) {
  cfg.validate();
  Codebook cb;
  cb.method = method;
  cb.tx_angles = codebook_angles(method, cfg.n_t, p_t);
  cb.rx_angles = codebook_angles(method, cfg.n_r, p_r);
  cb.F.resize(cfg.n_t, p_t);
  cb.G.resize(cfg.n_r, p_r);
  for (int p = 0; p < p_t; ++p) cb.F.col(p) = steer_tx(cfg, cb.tx_angles[p]);
  for (int q = 0; q < p_r; ++q) cb.G.col(q) = steer_rx(cfg, cb.rx_angles[q]);
  return cb;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

SensingOperator::SensingOperator(const Codebook& cb)
    : n_t_(cb.n_t()), n_r_(cb.n_r()), p_t_(cb.p_t()), p_r_(cb.p_r()) {
  a_ = kron(cb.F.transpose(), cb.G.adjoint());
  // K = (F* F^T) kron (G G^H), cheaper than forming A^H A directly.
  const Eigen::MatrixXcd tx = cb.F.conjugate() * cb.F.transpose();
  const Eigen::MatrixXcd rx = cb.G * cb.G.adjoint();
  k_ = kron(tx, rx);
}

SensingOperator make_sensing_operator(const Codebook& cb) { return SensingOperator(cb); }

bool vec_identity_check(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                        const Eigen::MatrixXcd& w) {
  if (u.cols() != v.rows() || v.cols() != w.rows())
    throw Error(ErrorCode::dimension_mismatch, "vec_identity_check: incompatible shapes");
  const Eigen::VectorXcd lhs = vec(u * v * w);
  const Eigen::VectorXcd rhs = kron(w.transpose(), u) * vec(v);
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  return (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace mmwcrlb
