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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mmwcrlb/fim_core.hpp"
#include "mmwcrlb/geometry.hpp"

namespace mmwcrlb::oracle {

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// Worst observed error, in the units of `tolerance`.
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

using BuilderFn = std::function<Eigen::MatrixXcd(BuilderKind, const ArrayConfig&, double,
                                                 std::optional<double>)>;

struct BuilderRoutes {
  BuilderFn outer;
  BuilderFn elementwise;
};

/// The library's two builder routes.
BuilderRoutes library_builder_routes();

struct ValidationOptions {
  long mc_draws = 20000;
  long prior_draws = 100000;
  std::uint64_t seed = 20240611;
};

/// Bessel functions against quadrature and series.
SuiteResult validate_specfun();

/// Outer-product vs general-element route, every kind, `draws` random angle
/// pairs per kind, n_t = n_r = 8; also checks rank <= 1.
SuiteResult validate_builders(const BuilderRoutes& routes = library_builder_routes(),
                              int draws = 50, std::uint64_t seed = 7);

/// Expected builders against the angular-integral quadrature.
SuiteResult validate_expected_builders(const std::vector<int>& sizes = {2, 8, 16});

/// Kronecker-trace shortcut against the explicit product.
SuiteResult validate_kron_trace(std::uint64_t seed = 11);

/// Assembled non-random FIM against the finite-difference Jacobian Gram form.
SuiteResult validate_fim_jacobian(int instances = 20, std::uint64_t seed = 13);

/// J_D against the Monte-Carlo average of the non-random FIM (3 sigma gate).
SuiteResult validate_fim_data(long mc_draws, std::uint64_t seed);

/// Prior term against its Gaussian limit at K = 1000 (10% gate).
SuiteResult validate_prior_limit(long mc_draws, std::uint64_t seed);

std::vector<SuiteResult> run_validation(const ValidationOptions& options = {});

}  // namespace mmwcrlb::oracle
