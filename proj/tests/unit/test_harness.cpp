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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/harness.hpp"

using namespace mmwcrlb;

namespace {

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows, Scale::linear);
  return os.str();
}

SweepSpec small_crlb_spec() {
  SweepSpec s = default_spec(Experiment::custom);
  s.n_t = s.n_r = 4;
  s.p_t = s.p_r = 4;
  s.snr_db = {0.0, 10.0};
  s.rice = {10.0};
  s.paths = {1, 2};
  s.mc_draws = 5000;
  return s;
}

}  // namespace

TEST_CASE("default specs") {
  const SweepSpec f3 = default_spec(Experiment::fig3);
  CHECK(f3.n_t == 16);
  CHECK(f3.delta == 0.5);
  CHECK(f3.snr_db.front() == -10.0);
  CHECK(f3.snr_db.back() == 30.0);
  CHECK(f3.paths == std::vector<int>{1, 3});
  CHECK(default_spec(Experiment::fig4).codebooks.size() == 3);
  CHECK(*default_spec(Experiment::fig5).ppr == 50.0);
  CHECK(default_spec(Experiment::fig1).mc_draws == 100000);
  CHECK(parse_experiment("fig2") == Experiment::fig2);
  CHECK_THROWS_AS(parse_experiment("fig9"), Error);
}

TEST_CASE("PPR convention") {
  CHECK(ppr_beams(50.0, 1) == 13);
  CHECK(ppr_beams(50.0, 3) == 22);
  CHECK(ppr_beams(3.0, 3) == 6);  // sqrt(27) rounds up
  CHECK(ppr_beams(12.0, 1) == 6);
}

TEST_CASE("sweep validation") {
  SweepSpec s = small_crlb_spec();
  CHECK_NOTHROW(validate_spec(s));
  s.rice = {0.0};
  try {
    validate_spec(s);
    FAIL("expected rayleigh_divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::rayleigh_divergence);
  }
  s = small_crlb_spec();
  s.snr_db.clear();
  CHECK_THROWS_AS(validate_spec(s), Error);
  s = small_crlb_spec();
  s.mc_draws = 10;
  CHECK_THROWS_AS(validate_spec(s), Error);
  s = small_crlb_spec();
  s.paths = {0};
  CHECK_THROWS_AS(validate_spec(s), Error);
}

TEST_CASE("CRLB sweep rows") {
  const auto rows = run_custom(small_crlb_spec());
  REQUIRE(rows.size() == 4);
  for (const ResultRow& r : rows) {
    CHECK(r.value > 0.0);
    CHECK(std::abs(*r.crlb_phi + *r.crlb_psi + *r.crlb_alpha - r.value) < 1e-12 * r.value);
    CHECK(*r.p_t == 4);
  }
  // Higher SNR, lower bound.
  CHECK(rows[1].value < rows[0].value);
  CHECK(rows[3].value < rows[2].value);
}

TEST_CASE("determinism and sub-grid independence") {
  SweepSpec s = small_crlb_spec();
  const std::string a = csv(run_custom(s));
  s.workers = 3;
  CHECK(csv(run_custom(s)) == a);
  const auto full = run_custom(s);
  s.paths = {2};
  s.snr_db = {10.0};
  const auto sub = run_custom(s);
  REQUIRE(sub.size() == 1);
  CHECK(sub[0].value == full[3].value);
  CHECK(sub[0].seed == full[3].seed);
  s = small_crlb_spec();
  s.seed = 2;
  CHECK(csv(run_custom(s)) != a);
}

TEST_CASE("pilot and PPR grids") {
  SweepSpec s = small_crlb_spec();
  s.pilots = {2, 4};
  s.paths = {1};
  s.snr_db = {15.0};
  s.codebooks = {CodebookMethod::uniform, CodebookMethod::orthogonal};
  const auto rows = run_fig4(s);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].experiment == "fig4");
  CHECK(*rows[0].p_t == 2);
  CHECK(*rows[1].p_t == 4);
  CHECK(*rows[2].codebook == "orthogonal");

  SweepSpec p = small_crlb_spec();
  p.ppr = 3.0;
  p.paths = {1, 3};
  p.snr_db = {10.0};
  const auto prow = run_fig5(p);
  REQUIRE(prow.size() == 2);
  CHECK(*prow[0].p_t == ppr_beams(3.0, 1));
  CHECK(*prow[1].p_r == ppr_beams(3.0, 3));
  CHECK(*prow[1].ppr == 3.0);
}

TEST_CASE("gain experiments") {
  SweepSpec s = default_spec(Experiment::fig1);
  s.rice = {1000.0};
  s.mc_draws = 100000;
  const auto rows = run_fig1(s);
  REQUIRE(rows.size() == 3);
  for (const ResultRow& r : rows) CHECK(std::abs(r.value - 1.0) < 0.02);
  CHECK(rows[0].seed != rows[1].seed);
  CHECK(csv(run_fig1(s)) == csv(rows));

  const auto f2 = run_fig2(s);
  for (const ResultRow& r : f2) {
    CHECK(r.value > 0.0);
    CHECK(std::abs(r.value - 2 * 1001.0) < 0.1 * 2 * 1001.0);
  }
  s.rice = {0.0};
  CHECK_THROWS_AS(run_fig1(s), Error);
}

TEST_CASE("CSV layout and metadata") {
  const auto rows = run_custom(small_crlb_spec());
  const std::string text = csv(rows);
  const std::string header = text.substr(0, text.find('\n'));
  CHECK(header == csv_header());
  const auto columns = std::count(header.begin(), header.end(), ',');
  std::istringstream lines(text);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == columns);
    ++n;
  }
  CHECK(n == 5);
  std::ostringstream db;
  write_csv(db, rows, Scale::db);
  CHECK(db.str().find(",db,") != std::string::npos);

  SweepSpec s = default_spec(Experiment::fig5);
  const auto meta = nlohmann::json::parse(spec_metadata(s));
  CHECK(meta["experiment"] == "fig5");
  CHECK(meta["ppr"] == 50.0);
  CHECK(meta["snr_db"].size() == 9);
  CHECK(meta["version"] == kToolVersion);
}

TEST_CASE("point seeds depend on coordinates, not order") {
  const auto a = point_seed(1, "fig3", {1.0, 2.0});
  CHECK(a == point_seed(1, "fig3", {1.0, 2.0}));
  CHECK(a != point_seed(1, "fig3", {2.0, 1.0}));
  CHECK(a != point_seed(1, "fig4", {1.0, 2.0}));
  CHECK(a != point_seed(2, "fig3", {1.0, 2.0}));
}
