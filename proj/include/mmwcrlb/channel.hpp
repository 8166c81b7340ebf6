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
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mmwcrlb/codebook.hpp"
#include "mmwcrlb/geometry.hpp"

namespace mmwcrlb {

/// Per-path Rician statistics under an exponential power delay profile
/// normalised so that sum(omega) == 1.
///
/// For path l: omega[l] = E[a_l^2] = mu[l]^2 + sigma2[l],
/// rice_factor[l] = mu[l]^2 / sigma2[l].
struct RiceProfile {
  std::vector<double> rice_factor;
  std::vector<double> omega;
  std::vector<double> sigma2;
  std::vector<double> mu;
  double delta = 0.0;

  int paths() const { return static_cast<int>(omega.size()); }
};

/// Builds the profile for L paths with decay delta and per-path Rice factors
/// (linear). `rice_factor` must hold L values.
RiceProfile normalize_profile(int paths, double delta, std::span<const double> rice_factor);

/// Angles (radians) and gains of one channel realisation.
struct PathSet {
  std::vector<double> phi;    // departure angles, transmit side
  std::vector<double> psi;    // arrival angles, receive side
  std::vector<double> alpha;  // gains, > 0

  int paths() const { return static_cast<int>(alpha.size()); }
  void validate() const;
};

enum class ParamKind { phi = 0, psi = 1, alpha = 2 };

struct ParamId {
  ParamKind kind;
  int path;
  bool operator==(const ParamId&) const = default;
};

/// Flat layout of the parameter vector: [phi_1..phi_L, psi_1..psi_L, a_1..a_L].
class ParamIndex {
 public:
  explicit ParamIndex(int paths) : paths_(paths) {}

  int paths() const { return paths_; }
  int size() const { return 3 * paths_; }
  int flat(ParamId id) const { return static_cast<int>(id.kind) * paths_ + id.path; }
  ParamId id(int flat) const {
    return {static_cast<ParamKind>(flat / paths_), flat % paths_};
  }

 private:
  int paths_;
};

/// Receiver noise variance for a given SNR with sum(omega) = 1:
/// sigma_v^2 = n_t n_r / 10^(snr_db/10).
double noise_variance(const ArrayConfig& cfg, double snr_db);

/// One Rician envelope |mu + sqrt(sigma2/2) (g1 + j g2)|.
double sample_rician(double mu, double sigma2, std::mt19937_64& rng);

/// Angles i.i.d. uniform on [0, pi), Rician gains per the profile.
PathSet sample_paths(const RiceProfile& profile, std::uint64_t seed);
PathSet sample_paths(const RiceProfile& profile, std::mt19937_64& rng);

/// Rician density with Rice factor K and second moment omega.
double rician_pdf(double a, double rice_factor, double omega);

/// E[a] for a Rician gain, by Gauss-Legendre quadrature of a * pdf(a) over
/// the bulk of the density. For K = 0 this is the Rayleigh mean.
double rician_mean(double rice_factor, double omega);

/// H = sum_l a_l e_r(psi_l) e_t(phi_l)^H, an n_r x n_t matrix.
Eigen::MatrixXcd channel_matrix(const ArrayConfig& cfg, const PathSet& paths);

/// m = sum_l a_l A (conj(e_t(phi_l)) kron e_r(psi_l)).
Eigen::VectorXcd observation_mean(const SensingOperator& op, const PathSet& paths);

/// Proper complex Gaussian log-likelihood of y given the paths.
double log_likelihood(const SensingOperator& op, const PathSet& paths,
                      const Eigen::VectorXcd& y, double sigma_v2);

}  // namespace mmwcrlb
