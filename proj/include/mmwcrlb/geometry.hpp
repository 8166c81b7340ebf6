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

#include <Eigen/Dense>

namespace mmwcrlb {

/// Element counts of the transmit and receive uniform linear arrays.
/// Spacing is half a wavelength, so the inter-element phase step is pi*cos(angle).
struct ArrayConfig {
  int n_t = 16;
  int n_r = 16;

  /// Throws ErrorCode::config if either count is below one.
  void validate() const;
};

// Steering vectors. Entry k is (1/sqrt(n)) exp(-j pi k cos(angle)).
Eigen::VectorXcd steer_tx(const ArrayConfig& cfg, double phi);
Eigen::VectorXcd steer_rx(const ArrayConfig& cfg, double psi);

// Index-weighted companions that appear in angle derivatives.
// Entry k is (k/sqrt(n)) exp(+j pi k cos(angle)); note the positive exponent.
Eigen::VectorXcd steer_tx_weighted(const ArrayConfig& cfg, double phi);
Eigen::VectorXcd steer_rx_weighted(const ArrayConfig& cfg, double psi);

/// Steering vector for an arbitrary element count.
Eigen::VectorXcd ula_response(int elements, double angle);
/// Weighted companion for an arbitrary element count.
Eigen::VectorXcd ula_response_weighted(int elements, double angle);

}  // namespace mmwcrlb
