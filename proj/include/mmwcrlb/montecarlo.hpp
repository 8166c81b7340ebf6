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
#include <random>

namespace mmwcrlb {

/// splitmix64 finaliser; a good 64-bit mixer for deriving stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `stream` of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  long draws = 0;
};

/// Sample mean of `sample(rng)` over `draws` draws.
///
/// Draws are split into chunks of kMonteCarloChunk, each with its own
/// generator seeded by derive_seed(seed, chunk). Chunk statistics are merged
/// in chunk order, so the result is bit-identical for any `workers` count.
inline constexpr long kMonteCarloChunk = 4096;

MonteCarloEstimate mc_estimate(long draws, std::uint64_t seed,
                               const std::function<double(std::mt19937_64&)>& sample,
                               int workers = 1);

}  // namespace mmwcrlb
