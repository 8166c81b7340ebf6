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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mmwcrlb/geometry.hpp"

namespace mmwcrlb {

enum class CodebookMethod {
  nonuniform,  // equal bins of cos(angle) over [-1, 1]
  uniform,     // equal bins of angle over [0, pi)
  orthogonal,  // cosines on the 2/n lattice: mutually orthogonal beams
};

std::string to_string(CodebookMethod method);
/// Throws ErrorCode::config on an unknown name.
CodebookMethod parse_codebook_method(std::string_view name);

/// Beamforming (F, n_t x p_t) and combining (G, n_r x p_r) matrices. Each
/// column is a unit-norm steering vector towards the listed angle.
struct Codebook {
  Eigen::MatrixXcd F;
  Eigen::MatrixXcd G;
  CodebookMethod method = CodebookMethod::nonuniform;
  std::vector<double> tx_angles;
  std::vector<double> rx_angles;

  int p_t() const { return static_cast<int>(F.cols()); }
  int p_r() const { return static_cast<int>(G.cols()); }
  int n_t() const { return static_cast<int>(F.rows()); }
  int n_r() const { return static_cast<int>(G.rows()); }
};

/// Pointing angles for one side of the array: p beams for an n-element ULA.
std::vector<double> codebook_angles(CodebookMethod method, int elements, int beams);

Codebook make_codebook(const ArrayConfig& cfg, CodebookMethod method, int p_t, int p_r);

/// A = F^T kron G^H maps vec(H) onto the p_t*p_r pilot observations; the Gram
/// matrix K = A^H A is what every Fisher entry contracts against.
class SensingOperator {
 public:
  explicit SensingOperator(const Codebook& cb);

  const Eigen::MatrixXcd& A() const { return a_; }
  const Eigen::MatrixXcd& K() const { return k_; }
  ArrayConfig array() const { return {n_t_, n_r_}; }
  int p_t() const { return p_t_; }
  int p_r() const { return p_r_; }
  int observations() const { return p_t_ * p_r_; }

 private:
  Eigen::MatrixXcd a_;
  Eigen::MatrixXcd k_;
  int n_t_;
  int n_r_;
  int p_t_;
  int p_r_;
};

SensingOperator make_sensing_operator(const Codebook& cb);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Column-major vectorisation.
Eigen::VectorXcd vec(const Eigen::MatrixXcd& m);

/// Checks vec(U V W) == (W^T kron U) vec(V) to within 1e-12 (scaled by the
/// magnitude of the left side). Throws ErrorCode::dimension_mismatch when the
/// product is undefined.
bool vec_identity_check(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                        const Eigen::MatrixXcd& w);

}  // namespace mmwcrlb
