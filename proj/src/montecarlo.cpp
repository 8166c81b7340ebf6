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

#include "mmwcrlb/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

namespace {

struct ChunkStats {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

ChunkStats run_chunk(long n, std::uint64_t seed,
                     const std::function<double(std::mt19937_64&)>& sample) {
  std::mt19937_64 rng(seed);
  ChunkStats s;
  for (long i = 0; i < n; ++i) {
    const double x = sample(rng);
    ++s.n;
    const double d = x - s.mean;
    s.mean += d / s.n;
    s.m2 += d * (x - s.mean);
  }
  return s;
}

}  // namespace

MonteCarloEstimate mc_estimate(long draws, std::uint64_t seed,
                               const std::function<double(std::mt19937_64&)>& sample,
                               int workers) {
  if (draws < 2) throw Error(ErrorCode::config, "Monte-Carlo needs at least 2 draws");
  const long chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkStats> stats(chunks);
  auto work = [&](long c) {
    const long n = std::min(kMonteCarloChunk, draws - c * kMonteCarloChunk);
    stats[c] = run_chunk(n, derive_seed(seed, static_cast<std::uint64_t>(c)), sample);
  };

  workers = std::max(1, std::min<int>(workers, static_cast<int>(chunks)));
  if (workers == 1) {
    for (long c = 0; c < chunks; ++c) work(c);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (long c = w; c < chunks; c += workers) work(c);
      });
    for (auto& t : pool) t.join();
  }

  // Chan et al. pairwise merge, always in chunk order.
  ChunkStats total;
  for (const ChunkStats& s : stats) {
    const long n = total.n + s.n;
    const double d = s.mean - total.mean;
    total.mean += d * s.n / n;
    total.m2 += s.m2 + d * d * static_cast<double>(total.n) * s.n / n;
    total.n = n;
  }
  MonteCarloEstimate out;
  out.mean = total.mean;
  out.draws = total.n;
  out.std_err = std::sqrt(total.m2 / (total.n - 1) / total.n);
  return out;
}

}  // namespace mmwcrlb
