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
#include <vector>

#include <Eigen/Dense>

#include "mmwcrlb/channel.hpp"
#include "mmwcrlb/codebook.hpp"
#include "mmwcrlb/fim_core.hpp"
#include "mmwcrlb/montecarlo.hpp"

namespace mmwcrlb {

/// E[builder] with every angle i.i.d. uniform on [0, pi).
struct ExpectedBuilder {
  BuilderKind kind;
  Eigen::MatrixXcd entries;
};

/// Closed forms in terms of J_0, (J_0 + J_2)/2 and J_{1/2}. Sinc-type factors
/// vanish at nonzero integer offsets, so P2, P3 and Q2 come out diagonal and
/// P5, P7, P9, Q4, Q5, Q7 are identically zero.
ExpectedBuilder expected_builder(BuilderKind kind, const ArrayConfig& cfg);

/// Per-path prior Fisher information -E[d^2 ln p / d a_l^2].
struct PriorTerm {
  std::vector<double> values;
  std::vector<double> std_err;
  long mc_draws = 0;
};

inline constexpr long kDefaultMcDraws = 100000;

/// -d^2 ln p(a) / da^2 for a Rician density with Rice factor K > 0 and second
/// moment omega, evaluated in real arithmetic with scaled I-Bessel ratios.
double rician_log_curvature(double a, double rice_factor, double omega);

/// Monte-Carlo estimate per path. Any K_l == 0 throws
/// ErrorCode::rayleigh_divergence; mc_draws must be >= 1000.
PriorTerm prior_term(const RiceProfile& profile, long mc_draws, std::uint64_t seed,
                     int workers = 1);

/// Data term J_D: non-random entries with gains replaced by their moments and
/// builders by their expectations.
FisherMatrix assemble_fim_data(const RiceProfile& profile, const SensingOperator& op,
                               double sigma_v2);

/// J_D with the prior term added on the diagonal of the gain block.
FisherMatrix assemble_fim_bayesian(const RiceProfile& profile, const SensingOperator& op,
                                   double sigma_v2, const PriorTerm& prior);
FisherMatrix assemble_fim_bayesian(const RiceProfile& profile, const SensingOperator& op,
                                   double sigma_v2, long mc_draws, std::uint64_t seed,
                                   int workers = 1);

/// E[1/a^2] for a Rician gain. K == 0 throws ErrorCode::rayleigh_divergence.
MonteCarloEstimate inverse_second_moment(double rice_factor, double omega, long mc_draws,
                                         std::uint64_t seed, int workers = 1);

}  // namespace mmwcrlb
