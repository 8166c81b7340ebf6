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

#include "mmwcrlb/geometry.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

void ArrayConfig::validate() const {
  if (n_t < 1 || n_r < 1)
    throw Error(ErrorCode::config, "ArrayConfig: element counts must be >= 1");
}

Eigen::VectorXcd ula_response(int elements, double angle) {
  const double step = -std::numbers::pi * std::cos(angle);
  const double scale = 1.0 / std::sqrt(static_cast<double>(elements));
  Eigen::VectorXcd v(elements);
  v[0] = scale;
  for (int k = 1; k < elements; ++k) v[k] = std::polar(scale, step * k);
  return v;
}

Eigen::VectorXcd ula_response_weighted(int elements, double angle) {
  const double step = std::numbers::pi * std::cos(angle);
  const double scale = 1.0 / std::sqrt(static_cast<double>(elements));
  Eigen::VectorXcd v(elements);
  v[0] = 0.0;
  for (int k = 1; k < elements; ++k) v[k] = std::polar(scale * k, step * k);
  return v;
}

Eigen::VectorXcd steer_tx(const ArrayConfig& cfg, double phi) {
  return ula_response(cfg.n_t, phi);
}

Eigen::VectorXcd steer_rx(const ArrayConfig& cfg, double psi) {
  return ula_response(cfg.n_r, psi);
}

Eigen::VectorXcd steer_tx_weighted(const ArrayConfig& cfg, double phi) {
  return ula_response_weighted(cfg.n_t, phi);
}

Eigen::VectorXcd steer_rx_weighted(const ArrayConfig& cfg, double psi) {
  return ula_response_weighted(cfg.n_r, psi);
}

}  // namespace mmwcrlb
