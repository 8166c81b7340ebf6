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
#include <random>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/fim_core.hpp"
#include "oracles.hpp"

using namespace mmwcrlb;
constexpr double pi = std::numbers::pi;

namespace {

PathSet random_paths(int paths, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.05, pi - 0.05);
  std::uniform_real_distribution<double> gain(0.3, 1.5);
  PathSet p;
  for (int l = 0; l < paths; ++l) {
    p.phi.push_back(angle(rng));
    p.psi.push_back(angle(rng));
    p.alpha.push_back(gain(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("builder spot values") {
  const ArrayConfig cfg{6, 5};
  CHECK(std::abs(build_builder(BuilderKind::Q, cfg, 0.8).entries.trace() - 1.0) < 1e-14);
  const Eigen::MatrixXcd p = build_builder(BuilderKind::P, cfg, pi / 2).entries;
  for (int r = 0; r < 6; ++r)
    for (int s = 0; s < 6; ++s) CHECK(std::abs(p(r, s) - r * s / 6.0) < 1e-14);
  const ArrayConfig four{4, 4};
  const Eigen::MatrixXcd p2 = build_builder(BuilderKind::P2, four, 1.0).entries;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      const auto expected =
          s / 4.0 * std::polar(1.0, -pi * (s - r) * std::cos(1.0)) * std::sin(1.0);
      CHECK(std::abs(p2(r, s) - expected) < 1e-14);
    }
}

TEST_CASE("two-path builders need both angles") {
  const ArrayConfig cfg{4, 4};
  for (BuilderKind kind : kAllBuilderKinds) {
    if (!is_two_path_kind(kind)) {
      CHECK_NOTHROW(build_builder(kind, cfg, 0.5));
      continue;
    }
    try {
      build_builder(kind, cfg, 0.5);
      FAIL("expected missing_argument for " << to_string(kind));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::missing_argument);
    }
    CHECK_THROWS_AS(builder_elementwise(kind, cfg, 0.5), Error);
  }
}

TEST_CASE("dual routes agree and builders have rank one") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.0, pi);
  const ArrayConfig cfg{7, 5};
  for (BuilderKind kind : kAllBuilderKinds) {
    for (int d = 0; d < 50; ++d) {
      const double al = angle(rng), am = angle(rng);
      const Eigen::MatrixXcd a = build_builder(kind, cfg, al, am).entries;
      INFO(to_string(kind));
      CHECK(a.rows() == (is_transmit_kind(kind) ? 7 : 5));
      CHECK((a - builder_elementwise(kind, cfg, al, am)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((a - oracle::reference_builder(kind, a.rows(), al, am)).cwiseAbs().maxCoeff() <=
            1e-12);
      const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
      CHECK(sv[1] <= 1e-10 * sv[0]);
    }
  }
}

TEST_CASE("kron_trace equals the explicit Kronecker product") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  auto random = [&](int n) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
  };
  for (int nt = 1; nt <= 4; ++nt)
    for (int nr = 1; nr <= 4; ++nr) {
      const auto k = random(nt * nr), p = random(nt), q = random(nr);
      CHECK(std::abs(kron_trace(k, p, q) - oracle::brute_kron_trace(k, p, q)) <= 1e-10);
    }
  CHECK_THROWS_AS(kron_trace(random(4), random(3), random(2)), Error);
}

TEST_CASE("orthogonal full codebook: gain entry is 2 / sigma^2") {
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::orthogonal, 4, 4));
  std::mt19937_64 rng(3);
  const PathSet paths = random_paths(2, rng);
  const double s2 = 0.7;
  for (int l = 0; l < 2; ++l) {
    const ParamId a{ParamKind::alpha, l};
    CHECK(std::abs(fim_entry(a, a, paths, op, s2) - 2.0 / s2) < 1e-12);
  }
}

TEST_CASE("entries match the finite-difference Jacobian Gram form") {
  std::mt19937_64 rng(4);
  const ArrayConfig cfg{4, 4};
  for (int t = 0; t < 20; ++t) {
    const CodebookMethod m = t % 2 ? CodebookMethod::uniform : CodebookMethod::nonuniform;
    const SensingOperator op(make_codebook(cfg, m, 4, 4));
    const PathSet paths = random_paths(2, rng);
    const Eigen::MatrixXd j = assemble_fim_nonrandom(paths, op, 0.3).values;
    const Eigen::MatrixXd ref = oracle::jacobian_gram_fim(op, paths, 0.3);
    CHECK((j - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() <= 1e-5);
  }
}

TEST_CASE("three paths, rectangular codebook") {
  std::mt19937_64 rng(5);
  const ArrayConfig cfg{5, 3};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::uniform, 3, 4));
  const PathSet paths = random_paths(3, rng);
  const Eigen::MatrixXd j = assemble_fim_nonrandom(paths, op, 1.0).values;
  const Eigen::MatrixXd ref = oracle::jacobian_gram_fim(op, paths, 1.0);
  CHECK((j - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("symmetry, PSD and trace consistency") {
  std::mt19937_64 rng(6);
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::nonuniform, 3, 3));
  const PathSet paths = random_paths(2, rng);
  const FisherMatrix f = assemble_fim_nonrandom(paths, op, 0.5);
  CHECK(f.order() == 6);
  CHECK(f.kind == FisherKind::nonrandom);
  CHECK((f.values - f.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(f.values).eigenvalues().minCoeff() >=
        -1e-8);
  double diag = 0.0;
  for (int i = 0; i < 6; ++i) diag += fim_entry(f.index.id(i), f.index.id(i), paths, op, 0.5);
  CHECK(std::abs(diag - f.values.trace()) < 1e-12 * std::abs(diag));
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      const double a = fim_entry(f.index.id(i), f.index.id(k), paths, op, 0.5);
      const double b = fim_entry(f.index.id(k), f.index.id(i), paths, op, 0.5);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("gain scaling law") {
  std::mt19937_64 rng(7);
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::nonuniform, 4, 4));
  const PathSet paths = random_paths(2, rng);
  PathSet doubled = paths;
  for (double& a : doubled.alpha) a *= 2.0;
  const Eigen::MatrixXd j1 = assemble_fim_nonrandom(paths, op, 0.4).values;
  const Eigen::MatrixXd j2 = assemble_fim_nonrandom(doubled, op, 0.4).values;
  // Each angle index contributes one power of the gain scale.
  for (int bi = 0; bi < 3; ++bi)
    for (int bj = 0; bj < 3; ++bj) {
      const int power = (bi < 2) + (bj < 2);
      const Eigen::MatrixXd a = j1.block(2 * bi, 2 * bj, 2, 2) * std::pow(2.0, power);
      const Eigen::MatrixXd b = j2.block(2 * bi, 2 * bj, 2, 2);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("same-path angle entries vanish with the gain") {
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::nonuniform, 4, 4));
  PathSet p{{1.0}, {2.0}, {1e-9}};
  const ParamId phi{ParamKind::phi, 0}, psi{ParamKind::psi, 0}, a{ParamKind::alpha, 0};
  CHECK(std::abs(fim_entry(phi, phi, p, op, 1.0)) < 1e-15);
  CHECK(std::abs(fim_entry(psi, psi, p, op, 1.0)) < 1e-15);
  const double gain_entry = fim_entry(a, a, p, op, 1.0);
  p.alpha[0] = 3.0;
  CHECK(fim_entry(a, a, p, op, 1.0) == doctest::Approx(gain_entry).epsilon(1e-14));
}

TEST_CASE("single-element arrays carry no angle information") {
  const ArrayConfig cfg{1, 1};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::uniform, 1, 1));
  const FisherMatrix f = assemble_fim_nonrandom(PathSet{{0.3}, {1.2}, {0.8}}, op, 1.0);
  CHECK(f.order() == 3);
  CHECK(f.values(0, 0) == 0.0);
  CHECK(f.values(1, 1) == 0.0);
  CHECK(f.values(2, 2) > 0.0);
}
