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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mmwcrlb/channel.hpp"
#include "mmwcrlb/codebook.hpp"
#include "mmwcrlb/geometry.hpp"

namespace mmwcrlb {

/// Rank-one building blocks of the Fisher entries. P-kinds are n_t x n_t and
/// built from departure angles, Q-kinds are n_r x n_r and built from arrival
/// angles. With e = steering vector, w = weighted companion, s = sin(angle):
///
///   P  = s_l^2 w_l w_l^H        Q  = e_l e_l^H
///   P2 = s_l conj(e_l) w_l^H    Q2 = s_l e_l w_l^T
///   P3 = s_l w_l e_l^T          Q3 = e_m e_l^H
///   P4 = conj(e_l) e_l^T        Q4 = s_l e_m w_l^T
///   P5 = s_l conj(e_m) w_l^H    Q5 = s_l s_m conj(w_l) w_m^T
///   P6 = conj(e_m) e_l^T        Q6 = s_l^2 conj(w_l) w_l^T
///   P7 = s_l s_m w_m w_l^H      Q7 = s_m e_l w_m^T
///   P8 = conj(e_l) e_m^T
///   P9 = s_l w_l e_m^T
enum class BuilderKind { P, P2, P3, P4, P5, P6, P7, P8, P9, Q, Q2, Q3, Q4, Q5, Q6, Q7 };

inline constexpr BuilderKind kAllBuilderKinds[] = {
    BuilderKind::P,  BuilderKind::P2, BuilderKind::P3, BuilderKind::P4,
    BuilderKind::P5, BuilderKind::P6, BuilderKind::P7, BuilderKind::P8,
    BuilderKind::P9, BuilderKind::Q,  BuilderKind::Q2, BuilderKind::Q3,
    BuilderKind::Q4, BuilderKind::Q5, BuilderKind::Q6, BuilderKind::Q7};

std::string to_string(BuilderKind kind);
bool is_transmit_kind(BuilderKind kind);
/// True for kinds that combine two different paths (P5-P9, Q3-Q5, Q7).
bool is_two_path_kind(BuilderKind kind);

struct BuilderMatrix {
  BuilderKind kind;
  Eigen::MatrixXcd entries;
  double angle_l;
  std::optional<double> angle_m;
};

/// Outer-product route. Two-path kinds need `angle_m`; otherwise
/// ErrorCode::missing_argument is thrown.
BuilderMatrix build_builder(BuilderKind kind, const ArrayConfig& cfg, double angle_l,
                            std::optional<double> angle_m = std::nullopt);

/// Closed-form general-element route for the same matrix.
Eigen::MatrixXcd builder_elementwise(BuilderKind kind, const ArrayConfig& cfg,
                                     double angle_l,
                                     std::optional<double> angle_m = std::nullopt);

/// tr[K (P kron Q)] without materialising the Kronecker product.
std::complex<double> kron_trace(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& p,
                                const Eigen::MatrixXcd& q);

enum class FisherKind { nonrandom, bayesian_data, bayesian_prior, bayesian_total };

std::string to_string(FisherKind kind);

struct FisherMatrix {
  Eigen::MatrixXd values;
  ParamIndex index;
  FisherKind kind;

  int order() const { return static_cast<int>(values.rows()); }
};

/// One Fisher entry for a fixed channel realisation. Symmetric in (i, j).
double fim_entry(ParamId i, ParamId j, const PathSet& paths, const SensingOperator& op,
                 double sigma_v2);

/// Full 3L x 3L non-random Fisher matrix; upper triangle computed, then mirrored.
FisherMatrix assemble_fim_nonrandom(const PathSet& paths, const SensingOperator& op,
                                    double sigma_v2);

namespace detail {

/// Gain moments that scale each entry family: `first[l]` multiplies entries
/// linear in a_l, `second[l]` the same-path quadratic ones, and
/// first[l]*first[m] the cross-path quadratic ones.
struct GainMoments {
  std::vector<double> first;
  std::vector<double> second;
};

/// Supplies the (possibly expected) builder matrix for paths l and m.
using BuilderSource = std::function<Eigen::MatrixXcd(BuilderKind, int l, int m)>;

double fisher_entry(ParamId i, ParamId j, const GainMoments& gains,
                    const BuilderSource& builders, const Eigen::MatrixXcd& k,
                    double sigma_v2);

Eigen::MatrixXd assemble(int paths, const GainMoments& gains,
                         const BuilderSource& builders, const Eigen::MatrixXcd& k,
                         double sigma_v2);

}  // namespace detail

}  // namespace mmwcrlb
