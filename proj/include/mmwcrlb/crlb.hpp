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

#include <array>

#include <Eigen/Dense>

#include "mmwcrlb/fim_core.hpp"

namespace mmwcrlb {

inline constexpr double kMinRcond = 1e-12;

struct CrlbReport {
  double total = 0.0;
  /// Traces of the phi, psi and gain diagonal blocks of the inverse.
  std::array<double, 3> per_block{};
  double rcond = 0.0;
  int order = 0;
  Eigen::MatrixXd inverse;
};

/// tr(J^-1) through an LDL^T factorisation with symmetric pivoting.
/// Throws ErrorCode::ill_conditioned when the reciprocal condition estimate is
/// below kMinRcond or the matrix is not positive definite.
CrlbReport crlb_trace(const FisherMatrix& j);

}  // namespace mmwcrlb
