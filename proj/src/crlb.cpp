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

#include "mmwcrlb/crlb.hpp"

#include <cmath>
#include <string>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

CrlbReport crlb_trace(const FisherMatrix& j) {
  const Eigen::MatrixXd& m = j.values;
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n != j.index.size())
    throw Error(ErrorCode::dimension_mismatch, "crlb_trace: matrix order differs from index");
  if (!m.allFinite()) throw Error(ErrorCode::ill_conditioned, "Fisher matrix has non-finite entries");

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  CrlbReport report;
  report.order = n;
  report.rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
  if (!(report.rcond >= kMinRcond))
    throw Error(ErrorCode::ill_conditioned,
                "Fisher matrix is ill-conditioned (rcond " + std::to_string(report.rcond) + ")");
  if (!ldlt.isPositive() || (ldlt.vectorD().array() <= 0.0).any())
    throw Error(ErrorCode::ill_conditioned, "Fisher matrix is not positive definite");

  report.inverse = ldlt.solve(Eigen::MatrixXd::Identity(n, n));
  report.inverse = 0.5 * (report.inverse + report.inverse.transpose()).eval();
  const int paths = j.index.paths();
  for (int b = 0; b < 3; ++b)
    report.per_block[b] = report.inverse.diagonal().segment(b * paths, paths).sum();
  report.total = report.inverse.trace();
  return report;
}

}  // namespace mmwcrlb
