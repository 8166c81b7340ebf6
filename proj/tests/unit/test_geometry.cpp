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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/geometry.hpp"

using namespace mmwcrlb;
constexpr double pi = std::numbers::pi;

TEST_CASE("steering vectors are unit norm with the expected phase step") {
  const ArrayConfig cfg{16, 8};
  for (double a : {0.0, 0.4, pi / 2, 2.9}) {
    const auto et = steer_tx(cfg, a);
    const auto er = steer_rx(cfg, a);
    CHECK(et.size() == 16);
    CHECK(er.size() == 8);
    CHECK(std::abs(et.norm() - 1.0) < 1e-14);
    CHECK(std::abs(er.norm() - 1.0) < 1e-14);
    for (int k = 1; k < 16; ++k)
      CHECK(std::abs(et[k] / et[k - 1] - std::polar(1.0, -pi * std::cos(a))) < 1e-12);
  }
}

TEST_CASE("broadside steering is flat") {
  const auto e = ula_response(4, pi / 2);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - 0.5) < 1e-15);
}

TEST_CASE("weighted companion") {
  const ArrayConfig cfg{5, 5};
  const double a = 1.1;
  const auto w = steer_tx_weighted(cfg, a);
  const auto e = steer_tx(cfg, a);
  CHECK(w[0] == std::complex<double>(0.0, 0.0));
  // Weighted entry k equals k * conj(e_k).
  for (int k = 0; k < 5; ++k) CHECK(std::abs(w[k] - double(k) * std::conj(e[k])) < 1e-14);
  CHECK(steer_rx_weighted(cfg, a).isApprox(w));
  // A single element carries no phase gradient.
  CHECK(ula_response_weighted(1, a).norm() == 0.0);
}

TEST_CASE("array configuration validation") {
  CHECK_NOTHROW(ArrayConfig{}.validate());
  CHECK(ArrayConfig{}.n_t == 16);
  CHECK_THROWS_AS((ArrayConfig{0, 4}.validate()), Error);
}
