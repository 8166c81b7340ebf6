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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mmwcrlb/errors.hpp"
#include "mmwcrlb/harness.hpp"
#include "validate.hpp"

using namespace mmwcrlb;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct Options {
  std::optional<int> nt, nr, pt, pr, runs;
  std::vector<double> snr_db;
  std::vector<std::string> rice_db;
  std::vector<double> rice;
  std::vector<int> paths;
  std::vector<int> pilots;
  std::optional<double> delta, ppr;
  std::vector<std::string> codebooks;
  std::optional<long> mc_draws;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out;
  std::string scale = "linear";
};

void add_sweep_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--nt", o.nt, "transmit antennas");
  cmd->add_option("--nr", o.nr, "receive antennas");
  cmd->add_option("--pt", o.pt, "beamforming pilots");
  cmd->add_option("--pr", o.pr, "beamcombining pilots");
  cmd->add_option("--snr-db", o.snr_db, "SNR grid in dB");
  auto* rdb = cmd->add_option("--rice-db", o.rice_db, "Rice factor grid in dB (-inf for 0)");
  auto* rlin = cmd->add_option("--rice", o.rice, "Rice factor grid, linear");
  rdb->excludes(rlin);
  cmd->add_option("--paths", o.paths, "path counts L");
  cmd->add_option("--pilots", o.pilots, "beams per side for pilot sweeps (p_t = p_r)");
  cmd->add_option("--delta", o.delta, "power delay profile decay");
  cmd->add_option("--codebook", o.codebooks, "nonuniform | uniform | orthogonal")
      ->check(CLI::IsMember({"nonuniform", "uniform", "orthogonal"}));
  cmd->add_option("--ppr", o.ppr, "pilots per parameter; sets p_t = p_r = ceil(sqrt(PPR*3L))");
  cmd->add_option("--mc-draws", o.mc_draws, "Monte-Carlo draws per estimate");
  cmd->add_option("--runs", o.runs, "independent runs (fig1, fig2)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
  cmd->add_option("--out", o.out, "CSV path; a .meta sidecar is written next to it");
  cmd->add_option("--scale", o.scale, "value column scale")
      ->check(CLI::IsMember({"linear", "db"}));
}

SweepSpec resolve(Experiment e, const Options& o) {
  SweepSpec s = default_spec(e);
  if (o.nt) s.n_t = *o.nt;
  if (o.nr) s.n_r = *o.nr;
  if (o.pt) s.p_t = *o.pt;
  if (o.pr) s.p_r = *o.pr;
  if (o.runs) s.runs = *o.runs;
  if (!o.snr_db.empty()) s.snr_db = o.snr_db;
  if (!o.rice_db.empty()) {
    s.rice.clear();
    for (const std::string& d : o.rice_db) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(d, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != d.size()) throw Error(ErrorCode::config, "bad --rice-db value '" + d + "'");
      s.rice.push_back(std::pow(10.0, v / 10.0));
    }
  }
  if (!o.rice.empty()) s.rice = o.rice;
  if (!o.paths.empty()) s.paths = o.paths;
  if (!o.pilots.empty()) s.pilots = o.pilots;
  if (o.delta) s.delta = *o.delta;
  if (o.ppr) s.ppr = *o.ppr;
  if ((o.pt || o.pr) && !o.ppr) s.ppr.reset();
  if (!o.codebooks.empty()) {
    s.codebooks.clear();
    for (const std::string& c : o.codebooks) s.codebooks.push_back(parse_codebook_method(c));
  }
  if (o.mc_draws) s.mc_draws = *o.mc_draws;
  s.seed = o.seed;
  s.workers = o.workers > 0 ? o.workers
                            : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  s.scale = o.scale == "db" ? Scale::db : Scale::linear;
  s.out = o.out;
  return s;
}

int run_experiment(Experiment e, const Options& o) {
  const SweepSpec spec = resolve(e, o);
  const std::vector<ResultRow> rows = run_sweep(spec);
  if (spec.out.empty()) {
    write_csv(std::cout, rows, spec.scale);
    return 0;
  }
  std::ofstream csv(spec.out, std::ios::binary);
  std::ofstream meta(spec.out + ".meta", std::ios::binary);
  if (!csv || !meta) throw Error(ErrorCode::config, "cannot write " + spec.out);
  write_csv(csv, rows, spec.scale);
  meta << spec_metadata(spec);
  std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), spec.out.c_str());
  return 0;
}

int run_validate(long mc_draws, std::uint64_t seed) {
  oracle::ValidationOptions opts;
  opts.mc_draws = mc_draws;
  opts.seed = seed;
  bool ok = true;
  for (const oracle::SuiteResult& r : oracle::run_validation(opts)) {
    std::printf("%s %-22s worst=%.3g tol=%.3g %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.worst, r.tolerance, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitValidation;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ill_conditioned:
    case ErrorCode::range:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cramer-Rao bounds for mmWave AoA/AoD/gain estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Options opts;
  const std::pair<const char*, const char*> experiments[] = {
      {"fig1", "E[1/a^2] of a Rician gain vs Rice factor, independent runs"},
      {"fig2", "prior Fisher information of a Rician gain vs Rice factor"},
      {"fig3", "Bayesian CRLB vs SNR for several Rice factors and path counts"},
      {"fig4", "Bayesian CRLB vs pilots for the three codebooks"},
      {"fig5", "Bayesian CRLB vs SNR at fixed pilots-per-parameter"},
      {"custom", "Bayesian CRLB over an arbitrary grid"}};
  std::vector<std::pair<CLI::App*, Experiment>> commands;
  for (auto [name, help] : experiments) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_sweep_options(cmd, opts);
    commands.emplace_back(cmd, parse_experiment(name));
  }
  long validate_draws = 20000;
  std::uint64_t validate_seed = 20240611;
  CLI::App* validate = app.add_subcommand("validate", "run every oracle suite");
  validate->add_option("--mc-draws", validate_draws, "draws for the Monte-Carlo suites");
  validate->add_option("--seed", validate_seed, "seed for the Monte-Carlo suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (validate->parsed()) return run_validate(validate_draws, validate_seed);
    for (auto [cmd, e] : commands)
      if (cmd->parsed()) return run_experiment(e, opts);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", to_string(e.code()), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
