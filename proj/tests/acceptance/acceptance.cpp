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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmwcrlb/crlb.hpp"
#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/fim_bayes.hpp"
#include "mmwcrlb/harness.hpp"
#include "oracles.hpp"

using namespace mmwcrlb;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& fn) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (runtime over limit)";
  }
  std::printf("%s criterion %d: %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows, Scale::linear);
  return os.str();
}

PathSet random_paths(int paths, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> gain(0.2, 2.0);
  PathSet p;
  for (int l = 0; l < paths; ++l) {
    p.phi.push_back(angle(rng));
    p.psi.push_back(angle(rng));
    p.alpha.push_back(gain(rng));
  }
  return p;
}

using Curve = std::map<double, double>;

Outcome criterion1() {
  const ArrayConfig cfg{16, 16};
  double worst = 0.0;
  std::string where;
  for (BuilderKind kind : kAllBuilderKinds) {
    const double err = (expected_builder(kind, cfg).entries -
                        oracle::quadrature_expected_builder(kind, 16))
                           .cwiseAbs()
                           .maxCoeff();
    if (err >= worst) {
      worst = err;
      where = to_string(kind);
    }
  }
  return {worst <= 1e-9, fmt("max abs error %.3g", worst) + " at " + where};
}

Outcome criterion2() {
  std::mt19937_64 rng(2024);
  const ArrayConfig cfg{4, 4};
  const CodebookMethod methods[] = {CodebookMethod::nonuniform, CodebookMethod::uniform,
                                    CodebookMethod::orthogonal};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SensingOperator op(make_codebook(cfg, methods[i % 3], 4, 4));
    const PathSet paths = random_paths(2, rng);
    const double s2 = noise_variance(cfg, 10.0);
    const Eigen::MatrixXd j = assemble_fim_nonrandom(paths, op, s2).values;
    const Eigen::MatrixXd ref = oracle::jacobian_gram_fim(op, paths, s2);
    worst = std::max(worst, (j - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-5, fmt("max relative error %.3g over 20 instances", worst)};
}

Outcome criterion3() {
  const ArrayConfig cfg{4, 4};
  const SensingOperator op(make_codebook(cfg, CodebookMethod::nonuniform, 4, 4));
  const std::vector<double> rice = {10.0, 10.0};
  const RiceProfile profile = normalize_profile(2, 0.5, rice);
  const double s2 = noise_variance(cfg, 10.0);
  const Eigen::MatrixXd jd = assemble_fim_data(profile, op, s2).values;
  const auto mc = oracle::mc_average_fim(profile, op, s2, 20000, 77);
  double worst = 0.0;
  const double floor = 1e-12 * jd.cwiseAbs().maxCoeff();
  for (int r = 0; r < jd.rows(); ++r)
    for (int c = 0; c < jd.cols(); ++c)
      worst = std::max(worst, std::abs(jd(r, c) - mc.mean(r, c)) /
                                  std::max(mc.std_err(r, c), floor));
  return {worst <= 3.0, fmt("worst entry %.3g standard errors (2e4 draws)", worst)};
}

Outcome criterion4() {
  const double k = 1000.0;
  const std::vector<double> rice = {k};
  const PriorTerm prior = prior_term(normalize_profile(1, 0.0, rice), kDefaultMcDraws, 4);
  const double ref = oracle::gaussian_limit_prior(k, 1.0);
  const double rel = std::abs(prior.values[0] - ref) / ref;
  bool rayleigh = false;
  SweepSpec s = default_spec(Experiment::fig2);
  s.rice = {0.0};
  try {
    run_fig2(s);
  } catch (const Error& e) {
    rayleigh = e.code() == ErrorCode::rayleigh_divergence;
  }
  return {rel <= 0.10 && rayleigh,
          fmt("K=30dB value %.6g vs %.6g", prior.values[0], ref) + fmt(" (rel %.3g)", rel) +
              (rayleigh ? "; K=0 -> rayleigh-divergence" : "; K=0 did not raise")};
}

double spread(const std::vector<ResultRow>& rows, double rice_db) {
  double lo = 1e300, hi = -1e300;
  for (const ResultRow& r : rows)
    if (std::abs(*r.rice_db - rice_db) < 1e-9) {
      lo = std::min(lo, r.value);
      hi = std::max(hi, r.value);
    }
  return (hi - lo) / lo;
}

Outcome criterion5() {
  SweepSpec s = default_spec(Experiment::fig1);
  s.rice = {1.0, 1000.0};
  const auto rows = run_fig1(s);
  double worst = 0.0;
  for (const ResultRow& r : rows)
    if (*r.rice_db > 29.0) worst = std::max(worst, std::abs(r.value - 1.0));
  const double s0 = spread(rows, 0.0), s30 = spread(rows, 30.0);
  return {worst <= 0.02 && s0 > s30,
          fmt("K=30dB max |E-1| %.3g", worst) + fmt("; spread 0dB %.3g vs 30dB %.3g", s0, s30)};
}

std::vector<ResultRow> fig3_rows, fig4_rows, fig5_rows;

Outcome criterion6() {
  fig3_rows = run_fig3(default_spec(Experiment::fig3));
  std::map<std::pair<int, double>, Curve> curves;  // (L, rice_db) -> snr -> crlb
  for (const ResultRow& r : fig3_rows) curves[{*r.paths, *r.rice_db}][*r.snr_db] = r.value;
  int violations = 0;
  std::string first;
  auto note = [&](const std::string& what) {
    if (violations++ == 0) first = what;
  };
  for (const auto& [key, curve] : curves) {
    double prev = 1e300;
    for (const auto& [snr, v] : curve) {
      if (!(v < prev)) note(fmt("not decreasing at L=%g snr=%g", key.first, snr));
      prev = v;
    }
  }
  for (int l : {1, 3})
    for (const auto& [snr, v20] : curves[{l, 20.0}]) {
      const double v10 = curves[{l, 10.0}][snr], v0 = curves[{l, 0.0}][snr];
      if (!(v20 < v10 && v10 < v0)) note(fmt("Rice ordering broken at L=%g snr=%g", l, snr));
    }
  for (double rice : {0.0, 10.0, 20.0})
    for (const auto& [snr, v1] : curves[{1, rice}])
      if (!(curves[{3, rice}][snr] > v1)) note(fmt("L=3 not above L=1 at rice=%g snr=%g", rice, snr));
  return {violations == 0,
          violations == 0 ? std::to_string(fig3_rows.size()) + " grid points, all orderings hold"
                          : std::to_string(violations) + " violations, first: " + first};
}

Outcome criterion7() {
  fig4_rows = run_fig4(default_spec(Experiment::fig4));
  std::map<std::string, std::map<int, double>> by;  // method -> p -> crlb
  for (const ResultRow& r : fig4_rows) by[*r.codebook][*r.p_t] = r.value;
  int violations = 0;
  std::string first;
  auto note = [&](const std::string& what) {
    if (violations++ == 0) first = what;
  };
  for (const auto& [p, vu] : by["uniform"])
    if (!(vu < by["nonuniform"][p])) note(fmt("uniform not below nonuniform at p=%g", p));
  const int smallest = by["orthogonal"].begin()->first;
  const double orth = by["orthogonal"][smallest];
  if (!(orth < by["uniform"][smallest] && orth < by["nonuniform"][smallest]))
    note(fmt("orthogonal not lowest at p=%g", smallest));
  for (const auto& [method, curve] : by) {
    double prev = 1e300;
    for (const auto& [p, v] : curve) {
      if (v > prev) note(method + fmt(" increases at p=%g", p));
      prev = v;
    }
  }
  return {violations == 0,
          violations == 0 ? fmt("%g pilot counts x 3 codebooks, orderings hold",
                                static_cast<double>(by["uniform"].size()))
                          : std::to_string(violations) + " violations, first: " + first};
}

Outcome criterion8() {
  fig5_rows = run_fig5(default_spec(Experiment::fig5));
  std::map<int, Curve> by;
  for (const ResultRow& r : fig5_rows) by[*r.paths][*r.snr_db] = r.value;
  int below = 0;
  double worst_ratio = 0.0;
  for (const auto& [snr, v1] : by[1]) {
    const double v3 = by[3][snr];
    if (v3 < v1) ++below;
    worst_ratio = std::max(worst_ratio, v3 / v1);
  }
  const int total = static_cast<int>(by[1].size());
  return {below == total, fmt("L=3 below L=1 at %g of %g SNR points", below, total) +
                              fmt("; max CRLB(L=3)/CRLB(L=1) = %.3g", worst_ratio)};
}

bool psd(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff() >= -1e-8;
}

double asym(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, m.cwiseAbs().maxCoeff());
}

Outcome criterion9() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> size(2, 6), paths(1, 3), method(0, 2);
  std::uniform_real_distribution<double> rice_db(0.0, 25.0), snr(-5.0, 25.0);
  double worst_asym = 0.0, worst_scale = 0.0;
  int not_psd = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = size(rng), L = paths(rng);
    const ArrayConfig cfg{n, n};
    const CodebookMethod m = static_cast<CodebookMethod>(method(rng));
    std::uniform_int_distribution<int> beams(1, n);
    const SensingOperator op(make_codebook(cfg, m, beams(rng), beams(rng)));
    const double s2 = noise_variance(cfg, snr(rng));
    std::vector<double> k;
    for (int l = 0; l < L; ++l) k.push_back(std::pow(10.0, rice_db(rng) / 10.0));
    const RiceProfile profile = normalize_profile(L, 0.5, k);
    const FisherMatrix jnr = assemble_fim_nonrandom(random_paths(L, rng), op, s2);
    const FisherMatrix jb = assemble_fim_bayesian(profile, op, s2, 2000, rng());
    worst_asym = std::max({worst_asym, asym(jnr.values), asym(jb.values)});
    not_psd += !psd(jnr.values) + !psd(jb.values);

    const double base = crlb_trace(jb).total;
    FisherMatrix scaled = jb;
    scaled.values *= 7.5;
    worst_scale = std::max(worst_scale, std::abs(crlb_trace(scaled).total * 7.5 - base) / base);
  }
  return {worst_asym <= 1e-10 && not_psd == 0 && worst_scale <= 1e-10,
          fmt("max asymmetry %.3g, scale-law rel error %.3g", worst_asym, worst_scale) +
              ", non-PSD " + std::to_string(not_psd)};
}

Outcome criterion10() {
  struct Run {
    Experiment e;
    const std::vector<ResultRow>* first;
  };
  std::vector<std::string> mismatched;
  SweepSpec f1 = default_spec(Experiment::fig1);
  const std::string f1a = csv(run_fig1(f1));
  f1.workers = 2;
  if (csv(run_fig1(f1)) != f1a) mismatched.push_back("fig1");
  SweepSpec f2 = default_spec(Experiment::fig2);
  if (csv(run_fig2(f2)) != csv(run_fig2(f2))) mismatched.push_back("fig2");
  for (Run r : {Run{Experiment::fig3, &fig3_rows}, Run{Experiment::fig4, &fig4_rows},
                Run{Experiment::fig5, &fig5_rows}}) {
    SweepSpec s = default_spec(r.e);
    s.workers = 2;
    if (r.first->empty() || csv(run_sweep(s)) != csv(*r.first))
      mismatched.push_back(to_string(r.e));
  }
  return {mismatched.empty(), mismatched.empty()
                                  ? "fig1-fig5 reruns byte-identical"
                                  : "mismatch in " + mismatched.front()};
}

}  // namespace

int main() {
  report(1, "expected builders vs 201-point quadrature, n=16", 10, criterion1);
  report(2, "non-random FIM vs finite-difference Jacobian oracle", 30, criterion2);
  report(3, "data term vs Monte-Carlo average of the non-random FIM", 120, criterion3);
  report(4, "prior term Gaussian limit and Rayleigh error", 0, criterion4);
  report(5, "inverse second moment at large Rice factor and seed spread", 0, criterion5);
  report(6, "CRLB vs SNR orderings (Rice factor, paths)", 300, criterion6);
  report(7, "CRLB vs pilots orderings across codebooks", 0, criterion7);
  report(8, "CRLB at PPR=50: L=3 below L=1", 0, criterion8);
  report(9, "symmetry, PSD and CRLB scale law on 50 configurations", 0, criterion9);
  report(10, "byte-identical reruns", 0, criterion10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
