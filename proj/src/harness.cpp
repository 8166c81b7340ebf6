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

#include "mmwcrlb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include <json.hpp>

#include "mmwcrlb/channel.hpp"
#include "mmwcrlb/crlb.hpp"
#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/fim_bayes.hpp"
#include "mmwcrlb/montecarlo.hpp"

namespace mmwcrlb {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::fig1: return "fig1";
    case Experiment::fig2: return "fig2";
    case Experiment::fig3: return "fig3";
    case Experiment::fig4: return "fig4";
    case Experiment::fig5: return "fig5";
    case Experiment::custom: return "custom";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::fig1, Experiment::fig2, Experiment::fig3, Experiment::fig4,
                       Experiment::fig5, Experiment::custom})
    if (name == to_string(e)) return e;
  throw Error(ErrorCode::config, "unknown experiment '" + std::string(name) + "'");
}

namespace {

std::vector<double> db_to_linear(std::initializer_list<double> db) {
  std::vector<double> out;
  for (double d : db) out.push_back(std::pow(10.0, d / 10.0));
  return out;
}

std::vector<double> snr_range() {
  std::vector<double> out;
  for (int s = -10; s <= 30; s += 5) out.push_back(s);
  return out;
}

}  // namespace

SweepSpec default_spec(Experiment e) {
  SweepSpec s;
  s.experiment = e;
  s.codebooks = {CodebookMethod::nonuniform};
  s.paths = {1};
  switch (e) {
    case Experiment::fig1:
    case Experiment::fig2:
      for (int d = 0; d <= 30; d += 2) s.rice.push_back(std::pow(10.0, d / 10.0));
      s.paths.clear();
      s.codebooks.clear();
      break;
    case Experiment::fig3:
      s.snr_db = snr_range();
      s.rice = db_to_linear({0.0, 10.0, 20.0});
      s.paths = {1, 3};
      break;
    case Experiment::fig4:
      s.snr_db = {15.0};
      s.rice = db_to_linear({10.0});
      s.pilots = {2, 4, 6, 8, 10, 12, 14, 16};
      s.codebooks = {CodebookMethod::nonuniform, CodebookMethod::uniform,
                     CodebookMethod::orthogonal};
      break;
    case Experiment::fig5:
      s.snr_db = snr_range();
      s.rice = db_to_linear({10.0});
      s.paths = {1, 3};
      s.ppr = 50.0;
      break;
    case Experiment::custom:
      s.snr_db = {15.0};
      s.rice = db_to_linear({10.0});
      break;
  }
  return s;
}

int ppr_beams(double ppr, int paths) {
  return static_cast<int>(std::ceil(std::sqrt(ppr * 3.0 * paths) - 1e-9));
}

void validate_spec(const SweepSpec& s) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::config, what); };
  if (s.rice.empty()) fail("Rice factor grid is empty");
  for (double k : s.rice) {
    if (k == 0.0)
      throw Error(ErrorCode::rayleigh_divergence,
                  "Rice factor 0 (Rayleigh) in grid: the Bayesian bound is undefined");
    if (!(k > 0.0) || !std::isfinite(k)) fail("Rice factors must be finite and positive");
  }
  if (s.mc_draws < 1000) fail("--mc-draws must be >= 1000");
  if (s.workers < 1) fail("--workers must be >= 1");
  if (s.experiment == Experiment::fig1 || s.experiment == Experiment::fig2) {
    if (s.runs < 1) fail("runs must be >= 1");
    if (!(s.omega > 0.0)) fail("omega must be positive");
    return;
  }
  if (s.snr_db.empty()) fail("SNR grid is empty");
  if (s.paths.empty()) fail("path-count grid is empty");
  if (s.codebooks.empty()) fail("codebook list is empty");
  for (double v : s.snr_db)
    if (!std::isfinite(v)) fail("SNR values must be finite");
  for (int l : s.paths)
    if (l < 1) fail("path counts must be >= 1");
  if (s.n_t < 1 || s.n_r < 1) fail("antenna counts must be >= 1");
  if (!(s.delta >= 0.0)) fail("delta must be >= 0");
  if (s.ppr && !(*s.ppr > 0.0)) fail("PPR must be positive");
  if (s.experiment == Experiment::fig4 && s.pilots.empty()) fail("pilot grid is empty");
  for (int p : s.pilots)
    if (p < 1) fail("pilot counts must be >= 1");
  if (s.p_t < 1 || s.p_r < 1) fail("pilot counts must be >= 1");
}

std::uint64_t point_seed(std::uint64_t master, std::string_view experiment,
                         const std::vector<double>& coordinates) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : experiment) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = derive_seed(master, h);
  for (double x : coordinates) s = splitmix64(s ^ std::bit_cast<std::uint64_t>(x));
  return s;
}

namespace {

// Runs fn(i) for i in [0, n) on `workers` threads; results land by index.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double to_db(double x) { return 10.0 * std::log10(x); }

struct GainPoint {
  int run;
  double rice;
};

std::vector<GainPoint> gain_grid(const SweepSpec& s) {
  std::vector<GainPoint> g;
  for (double k : s.rice)
    for (int r = 0; r < s.runs; ++r) g.push_back({r, k});
  return g;
}

std::vector<ResultRow> run_gain_experiment(
    const SweepSpec& s,
    const std::function<MonteCarloEstimate(double rice, std::uint64_t seed)>& estimate) {
  validate_spec(s);
  const std::string name = to_string(s.experiment);
  const std::vector<GainPoint> grid = gain_grid(s);
  return parallel_map<ResultRow>(grid.size(), s.workers, [&](std::size_t i) {
    const GainPoint& p = grid[i];
    const std::uint64_t seed = point_seed(s.seed, name, {p.rice, double(p.run)});
    const MonteCarloEstimate est = estimate(p.rice, seed);
    ResultRow row;
    row.experiment = name;
    row.run = p.run;
    row.rice_db = to_db(p.rice);
    row.value = est.mean;
    row.mc_draws = est.draws;
    row.mc_std_err = est.std_err;
    row.seed = seed;
    return row;
  });
}

struct CrlbPoint {
  double snr_db;
  double rice;
  int paths;
  CodebookMethod method;
  int p_t;
  int p_r;
};

std::vector<CrlbPoint> crlb_grid(const SweepSpec& s) {
  std::vector<CrlbPoint> g;
  for (int l : s.paths)
    for (double k : s.rice)
      for (CodebookMethod m : s.codebooks) {
        std::vector<std::pair<int, int>> beams;
        if (s.ppr) {
          const int p = ppr_beams(*s.ppr, l);
          beams.emplace_back(p, p);
        } else if (!s.pilots.empty()) {
          for (int p : s.pilots) beams.emplace_back(p, p);
        } else {
          beams.emplace_back(s.p_t, s.p_r);
        }
        for (auto [pt, pr] : beams)
          for (double snr : s.snr_db) g.push_back({snr, k, l, m, pt, pr});
      }
  return g;
}

std::vector<ResultRow> run_crlb_experiment(const SweepSpec& s) {
  validate_spec(s);
  const std::string name = to_string(s.experiment);
  const std::vector<CrlbPoint> grid = crlb_grid(s);
  const ArrayConfig cfg{s.n_t, s.n_r};
  return parallel_map<ResultRow>(grid.size(), s.workers, [&](std::size_t i) {
    const CrlbPoint& p = grid[i];
    const std::vector<double> rice(p.paths, p.rice);
    const RiceProfile profile = normalize_profile(p.paths, s.delta, rice);
    // The prior draws depend only on the gain statistics, so every SNR and
    // codebook point of one curve shares them.
    const std::uint64_t seed = point_seed(s.seed, name, {p.rice, double(p.paths), s.delta});
    const PriorTerm prior = prior_term(profile, s.mc_draws, seed);
    const SensingOperator op(make_codebook(cfg, p.method, p.p_t, p.p_r));
    const FisherMatrix j =
        assemble_fim_bayesian(profile, op, noise_variance(cfg, p.snr_db), prior);
    const CrlbReport report = crlb_trace(j);

    ResultRow row;
    row.experiment = name;
    row.snr_db = p.snr_db;
    row.rice_db = to_db(p.rice);
    row.paths = p.paths;
    row.codebook = to_string(p.method);
    row.p_t = p.p_t;
    row.p_r = p.p_r;
    row.ppr = s.ppr;
    row.value = report.total;
    row.crlb_phi = report.per_block[0];
    row.crlb_psi = report.per_block[1];
    row.crlb_alpha = report.per_block[2];
    row.rcond = report.rcond;
    row.mc_draws = prior.mc_draws;
    row.mc_std_err = *std::max_element(prior.std_err.begin(), prior.std_err.end());
    row.seed = seed;
    return row;
  });
}

SweepSpec as(const SweepSpec& spec, Experiment e) {
  SweepSpec s = spec;
  s.experiment = e;
  return s;
}

}  // namespace

std::vector<ResultRow> run_fig1(const SweepSpec& spec) {
  return run_gain_experiment(as(spec, Experiment::fig1), [&](double k, std::uint64_t seed) {
    return inverse_second_moment(k, spec.omega, spec.mc_draws, seed);
  });
}

std::vector<ResultRow> run_fig2(const SweepSpec& spec) {
  return run_gain_experiment(as(spec, Experiment::fig2), [&](double k, std::uint64_t seed) {
    RiceProfile profile;
    profile.rice_factor = {k};
    profile.omega = {spec.omega};
    profile.sigma2 = {spec.omega / (1.0 + k)};
    profile.mu = {std::sqrt(k * profile.sigma2[0])};
    const PriorTerm prior = prior_term(profile, spec.mc_draws, seed);
    return MonteCarloEstimate{prior.values[0], prior.std_err[0], prior.mc_draws};
  });
}

std::vector<ResultRow> run_fig3(const SweepSpec& spec) {
  return run_crlb_experiment(as(spec, Experiment::fig3));
}
std::vector<ResultRow> run_fig4(const SweepSpec& spec) {
  return run_crlb_experiment(as(spec, Experiment::fig4));
}
std::vector<ResultRow> run_fig5(const SweepSpec& spec) {
  return run_crlb_experiment(as(spec, Experiment::fig5));
}
std::vector<ResultRow> run_custom(const SweepSpec& spec) {
  return run_crlb_experiment(as(spec, Experiment::custom));
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  switch (spec.experiment) {
    case Experiment::fig1: return run_fig1(spec);
    case Experiment::fig2: return run_fig2(spec);
    case Experiment::fig3: return run_fig3(spec);
    case Experiment::fig4: return run_fig4(spec);
    case Experiment::fig5: return run_fig5(spec);
    case Experiment::custom: return run_custom(spec);
  }
  return {};
}

std::string csv_header() {
  return "experiment,run,snr_db,rice_db,paths,codebook,p_t,p_r,pilots,ppr,scale,value,"
         "value_linear,value_db,crlb_phi,crlb_psi,crlb_alpha,rcond,mc_draws,mc_std_err,seed";
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, std::string>) return *v;
  else if constexpr (std::is_integral_v<T>) return std::to_string(*v);
  else return num(*v);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, Scale scale) {
  os << csv_header() << '\n';
  for (const ResultRow& r : rows) {
    std::optional<int> pilots;
    if (r.p_t && r.p_r) pilots = *r.p_t * *r.p_r;
    const double db = to_db(r.value);
    os << r.experiment << ',' << opt(r.run) << ',' << opt(r.snr_db) << ',' << opt(r.rice_db)
       << ',' << opt(r.paths) << ',' << opt(r.codebook) << ',' << opt(r.p_t) << ','
       << opt(r.p_r) << ',' << opt(pilots) << ',' << opt(r.ppr) << ','
       << (scale == Scale::db ? "db" : "linear") << ','
       << num(scale == Scale::db ? db : r.value) << ',' << num(r.value) << ',' << num(db)
       << ',' << opt(r.crlb_phi) << ',' << opt(r.crlb_psi) << ',' << opt(r.crlb_alpha) << ','
       << opt(r.rcond) << ',' << r.mc_draws << ',' << num(r.mc_std_err) << ',' << r.seed
       << '\n';
  }
}

std::string spec_metadata(const SweepSpec& s) {
  nlohmann::ordered_json j;
  j["tool"] = "mmwcrlb";
  j["version"] = kToolVersion;
  j["experiment"] = to_string(s.experiment);
  j["snr_db"] = s.snr_db;
  std::vector<double> rice_db;
  for (double k : s.rice) rice_db.push_back(to_db(k));
  j["rice_db"] = rice_db;
  j["rice_linear"] = s.rice;
  j["paths"] = s.paths;
  j["pilots_per_side"] = s.pilots;
  std::vector<std::string> books;
  for (CodebookMethod m : s.codebooks) books.push_back(to_string(m));
  j["codebooks"] = books;
  j["n_t"] = s.n_t;
  j["n_r"] = s.n_r;
  if (s.ppr) {
    j["ppr"] = *s.ppr;
    j["pilot_convention"] = "p_t = p_r = ceil(sqrt(PPR * 3L))";
  } else if (s.pilots.empty()) {
    j["p_t"] = s.p_t;
    j["p_r"] = s.p_r;
  }
  j["delta"] = s.delta;
  j["omega"] = s.omega;
  j["mc_draws"] = s.mc_draws;
  j["runs"] = s.runs;
  j["seed"] = s.seed;
  j["scale"] = s.scale == Scale::db ? "db" : "linear";
  j["noise_variance"] = "n_t * n_r / 10^(snr_db / 10)";
  j["out"] = s.out;
  return j.dump(2) + "\n";
}

}  // namespace mmwcrlb
