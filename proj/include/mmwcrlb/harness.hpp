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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mmwcrlb/codebook.hpp"

namespace mmwcrlb {

enum class Experiment { fig1, fig2, fig3, fig4, fig5, custom };
enum class Scale { linear, db };

std::string to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

inline constexpr const char* kToolVersion = "0.1.0";

/// One sweep. Rice factors are linear (dB conversion happens at the CLI);
/// `pilots` lists per-side beam counts, used by fig4 (p_t = p_r = p).
struct SweepSpec {
  Experiment experiment = Experiment::custom;
  std::vector<double> snr_db;
  std::vector<double> rice;
  std::vector<int> paths;
  std::vector<int> pilots;
  std::vector<CodebookMethod> codebooks;
  int n_t = 16;
  int n_r = 16;
  int p_t = 16;
  int p_r = 16;
  /// Pilots-per-parameter ratio; when set, p_t = p_r = ceil(sqrt(ppr * 3L)).
  std::optional<double> ppr;
  double delta = 0.5;
  double omega = 1.0;  // second moment used by fig1 / fig2
  long mc_draws = 100000;
  int runs = 3;        // independent runs for fig1 / fig2
  std::uint64_t seed = 1;
  int workers = 1;
  Scale scale = Scale::linear;
  std::string out;
};

/// Default grids and parameters for each experiment.
SweepSpec default_spec(Experiment e);

/// Throws ErrorCode::config for empty grids or out-of-range values and
/// ErrorCode::rayleigh_divergence for a zero Rice factor.
void validate_spec(const SweepSpec& spec);

/// p_t = p_r = ceil(sqrt(ppr * 3L)).
int ppr_beams(double ppr, int paths);

struct ResultRow {
  std::string experiment;
  std::optional<int> run;
  std::optional<double> snr_db;
  std::optional<double> rice_db;
  std::optional<int> paths;
  std::optional<std::string> codebook;
  std::optional<int> p_t;
  std::optional<int> p_r;
  std::optional<double> ppr;
  double value = 0.0;  // CRLB total, E[1/a^2] or prior Fisher information
  std::optional<double> crlb_phi;
  std::optional<double> crlb_psi;
  std::optional<double> crlb_alpha;
  std::optional<double> rcond;
  long mc_draws = 0;
  double mc_std_err = 0.0;  // largest per-path standard error
  std::uint64_t seed = 0;
};

std::vector<ResultRow> run_fig1(const SweepSpec& spec);
std::vector<ResultRow> run_fig2(const SweepSpec& spec);
std::vector<ResultRow> run_fig3(const SweepSpec& spec);
std::vector<ResultRow> run_fig4(const SweepSpec& spec);
std::vector<ResultRow> run_fig5(const SweepSpec& spec);
std::vector<ResultRow> run_custom(const SweepSpec& spec);
/// Validates, then dispatches on spec.experiment.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Seed of one grid point: hash of the master seed, the experiment and the
/// coordinates the Monte-Carlo draws depend on.
std::uint64_t point_seed(std::uint64_t master, std::string_view experiment,
                         const std::vector<double>& coordinates);

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, Scale scale);
/// JSON sidecar describing the resolved spec.
std::string spec_metadata(const SweepSpec& spec);

}  // namespace mmwcrlb
