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

#include "mmwcrlb/fim_core.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cd phase(double x) { return std::polar(1.0, kPi * x); }

double require_second(BuilderKind kind, std::optional<double> angle_m) {
  if (!angle_m)
    throw Error(ErrorCode::missing_argument,
                "builder " + to_string(kind) + " needs the second path angle");
  return *angle_m;
}

int builder_size(BuilderKind kind, const ArrayConfig& cfg) {
  return is_transmit_kind(kind) ? cfg.n_t : cfg.n_r;
}

}  // namespace

std::string to_string(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::P: return "P";
    case BuilderKind::P2: return "P2";
    case BuilderKind::P3: return "P3";
    case BuilderKind::P4: return "P4";
    case BuilderKind::P5: return "P5";
    case BuilderKind::P6: return "P6";
    case BuilderKind::P7: return "P7";
    case BuilderKind::P8: return "P8";
    case BuilderKind::P9: return "P9";
    case BuilderKind::Q: return "Q";
    case BuilderKind::Q2: return "Q2";
    case BuilderKind::Q3: return "Q3";
    case BuilderKind::Q4: return "Q4";
    case BuilderKind::Q5: return "Q5";
    case BuilderKind::Q6: return "Q6";
    case BuilderKind::Q7: return "Q7";
  }
  return "?";
}

bool is_transmit_kind(BuilderKind kind) {
  return static_cast<int>(kind) <= static_cast<int>(BuilderKind::P9);
}

bool is_two_path_kind(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::P5:
    case BuilderKind::P6:
    case BuilderKind::P7:
    case BuilderKind::P8:
    case BuilderKind::P9:
    case BuilderKind::Q3:
    case BuilderKind::Q4:
    case BuilderKind::Q5:
    case BuilderKind::Q7:
      return true;
    default:
      return false;
  }
}

BuilderMatrix build_builder(BuilderKind kind, const ArrayConfig& cfg, double angle_l,
                            std::optional<double> angle_m) {
  cfg.validate();
  const int n = builder_size(kind, cfg);
  const double al = angle_l;
  const double am = is_two_path_kind(kind) ? require_second(kind, angle_m) : angle_l;
  const Eigen::VectorXcd el = ula_response(n, al);
  const Eigen::VectorXcd wl = ula_response_weighted(n, al);
  const Eigen::VectorXcd em = ula_response(n, am);
  const Eigen::VectorXcd wm = ula_response_weighted(n, am);
  const double sl = std::sin(al);
  const double sm = std::sin(am);

  Eigen::MatrixXcd m;
  switch (kind) {
    case BuilderKind::P: m = sl * sl * wl * wl.adjoint(); break;
    case BuilderKind::P2: m = sl * el.conjugate() * wl.adjoint(); break;
    case BuilderKind::P3: m = sl * wl * el.transpose(); break;
    case BuilderKind::P4: m = el.conjugate() * el.transpose(); break;
    case BuilderKind::P5: m = sl * em.conjugate() * wl.adjoint(); break;
    case BuilderKind::P6: m = em.conjugate() * el.transpose(); break;
    case BuilderKind::P7: m = sl * sm * wm * wl.adjoint(); break;
    case BuilderKind::P8: m = el.conjugate() * em.transpose(); break;
    case BuilderKind::P9: m = sl * wl * em.transpose(); break;
    case BuilderKind::Q: m = el * el.adjoint(); break;
    case BuilderKind::Q2: m = sl * el * wl.transpose(); break;
    case BuilderKind::Q3: m = em * el.adjoint(); break;
    case BuilderKind::Q4: m = sl * em * wl.transpose(); break;
    case BuilderKind::Q5: m = sl * sm * wl.conjugate() * wm.transpose(); break;
    case BuilderKind::Q6: m = sl * sl * wl.conjugate() * wl.transpose(); break;
    case BuilderKind::Q7: m = sm * el * wm.transpose(); break;
  }
  BuilderMatrix out{kind, std::move(m), angle_l, std::nullopt};
  if (is_two_path_kind(kind)) out.angle_m = am;
  return out;
}

Eigen::MatrixXcd builder_elementwise(BuilderKind kind, const ArrayConfig& cfg,
                                     double angle_l, std::optional<double> angle_m) {
  cfg.validate();
  const int n = builder_size(kind, cfg);
  const double am = is_two_path_kind(kind) ? require_second(kind, angle_m) : angle_l;
  const double cl = std::cos(angle_l);
  const double cm = std::cos(am);
  const double sl = std::sin(angle_l);
  const double sm = std::sin(am);
  const double inv_n = 1.0 / n;

  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const double rs = static_cast<double>(r) * s;
      cd v;
      switch (kind) {
        case BuilderKind::P: v = rs * sl * sl * phase((r - s) * cl); break;
        case BuilderKind::P2: v = s * sl * phase((r - s) * cl); break;
        case BuilderKind::P3: v = r * sl * phase((r - s) * cl); break;
        case BuilderKind::P4: v = phase((r - s) * cl); break;
        case BuilderKind::P5: v = s * sl * phase(r * cm - s * cl); break;
        case BuilderKind::P6: v = phase(r * cm - s * cl); break;
        case BuilderKind::P7: v = rs * sl * sm * phase(r * cm - s * cl); break;
        case BuilderKind::P8: v = phase(r * cl - s * cm); break;
        case BuilderKind::P9: v = r * sl * phase(r * cl - s * cm); break;
        case BuilderKind::Q: v = phase((s - r) * cl); break;
        case BuilderKind::Q2: v = s * sl * phase((s - r) * cl); break;
        case BuilderKind::Q3: v = phase(s * cl - r * cm); break;
        case BuilderKind::Q4: v = s * sl * phase(s * cl - r * cm); break;
        case BuilderKind::Q5: v = rs * sl * sm * phase(s * cm - r * cl); break;
        case BuilderKind::Q6: v = rs * sl * sl * phase((s - r) * cl); break;
        case BuilderKind::Q7: v = s * sm * phase(s * cm - r * cl); break;
      }
      m(r, s) = inv_n * v;
    }
  }
  return m;
}

std::complex<double> kron_trace(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& p,
                                const Eigen::MatrixXcd& q) {
  const Eigen::Index nt = p.rows();
  const Eigen::Index nr = q.rows();
  if (p.cols() != nt || q.cols() != nr || k.rows() != nt * nr || k.cols() != nt * nr)
    throw Error(ErrorCode::dimension_mismatch, "kron_trace: incompatible shapes");
  // tr[K (P kron Q)] = sum_{a,c} P(a,c) tr(K_{ca} Q), K_{ca} the (c,a) block of K.
  cd sum = 0.0;
  for (Eigen::Index a = 0; a < nt; ++a)
    for (Eigen::Index c = 0; c < nt; ++c) {
      if (p(a, c) == 0.0) continue;
      const auto block = k.block(c * nr, a * nr, nr, nr);
      sum += p(a, c) * block.transpose().cwiseProduct(q).sum();
    }
  return sum;
}

std::string to_string(FisherKind kind) {
  switch (kind) {
    case FisherKind::nonrandom: return "nonrandom";
    case FisherKind::bayesian_data: return "bayesian-data";
    case FisherKind::bayesian_prior: return "bayesian-prior";
    case FisherKind::bayesian_total: return "bayesian-total";
  }
  return "?";
}

namespace detail {

namespace {

enum class Gain { none, first, second, cross };
enum class Part { re, im };

struct Family {
  BuilderKind p;
  BuilderKind q;
  double coefficient;
  Gain gain;
  Part part;
};

constexpr double kPi2 = kPi * kPi;

// Indexed by [kind(i)][kind(j)] with kind(i) <= kind(j), i on path l, j on path m.
constexpr Family kSamePath[3][3] = {
    {{BuilderKind::P, BuilderKind::Q, 2 * kPi2, Gain::second, Part::re},
     {BuilderKind::P3, BuilderKind::Q2, -2 * kPi2, Gain::second, Part::re},
     {BuilderKind::P2, BuilderKind::Q, -2 * kPi, Gain::first, Part::im}},
    {{},
     {BuilderKind::P4, BuilderKind::Q6, 2 * kPi2, Gain::second, Part::re},
     {BuilderKind::P4, BuilderKind::Q2, 2 * kPi, Gain::first, Part::im}},
    {{}, {}, {BuilderKind::P4, BuilderKind::Q, 2.0, Gain::none, Part::re}},
};

constexpr Family kCrossPath[3][3] = {
    {{BuilderKind::P7, BuilderKind::Q3, 2 * kPi2, Gain::cross, Part::re},
     {BuilderKind::P9, BuilderKind::Q7, -2 * kPi2, Gain::cross, Part::re},
     {BuilderKind::P5, BuilderKind::Q3, -2 * kPi, Gain::first, Part::im}},
    {{},
     {BuilderKind::P8, BuilderKind::Q5, 2 * kPi2, Gain::cross, Part::re},
     {BuilderKind::P6, BuilderKind::Q4, 2 * kPi, Gain::first, Part::im}},
    {{}, {}, {BuilderKind::P6, BuilderKind::Q3, 2.0, Gain::none, Part::re}},
};

}  // namespace

double fisher_entry(ParamId i, ParamId j, const GainMoments& gains,
                    const BuilderSource& builders, const Eigen::MatrixXcd& k,
                    double sigma_v2) {
  if (static_cast<int>(i.kind) > static_cast<int>(j.kind)) std::swap(i, j);
  const int l = i.path;
  const int m = j.path;
  const int a = static_cast<int>(i.kind);
  const int b = static_cast<int>(j.kind);
  const Family& f = (l == m) ? kSamePath[a][b] : kCrossPath[a][b];

  double gain = 1.0;
  switch (f.gain) {
    case Gain::none: break;
    case Gain::first: gain = gains.first[l]; break;
    case Gain::second: gain = gains.second[l]; break;
    case Gain::cross: gain = gains.first[l] * gains.first[m]; break;
  }
  const cd t = kron_trace(k, builders(f.p, l, m), builders(f.q, l, m));
  const double part = (f.part == Part::re) ? t.real() : t.imag();
  return f.coefficient * gain * part / sigma_v2;
}

Eigen::MatrixXd assemble(int paths, const GainMoments& gains,
                         const BuilderSource& builders, const Eigen::MatrixXcd& k,
                         double sigma_v2) {
  const ParamIndex index(paths);
  const int order = index.size();
  Eigen::MatrixXd j(order, order);
  for (int r = 0; r < order; ++r)
    for (int c = r; c < order; ++c) {
      j(r, c) = fisher_entry(index.id(r), index.id(c), gains, builders, k, sigma_v2);
      j(c, r) = j(r, c);
    }
  return j;
}

}  // namespace detail

namespace {

void check_entry_inputs(const PathSet& paths, double sigma_v2) {
  if (paths.phi.size() != paths.alpha.size() || paths.psi.size() != paths.alpha.size())
    throw Error(ErrorCode::dimension_mismatch, "PathSet: phi/psi/alpha lengths differ");
  if (!(sigma_v2 > 0.0))
    throw Error(ErrorCode::domain, "noise variance must be positive");
}

detail::GainMoments realised_gains(const PathSet& paths) {
  detail::GainMoments g;
  g.first = paths.alpha;
  for (double a : paths.alpha) g.second.push_back(a * a);
  return g;
}

detail::BuilderSource realised_builders(const PathSet& paths, const ArrayConfig& cfg) {
  return [&paths, cfg](BuilderKind kind, int l, int m) {
    const auto& angles = is_transmit_kind(kind) ? paths.phi : paths.psi;
    return build_builder(kind, cfg, angles[l], angles[m]).entries;
  };
}

}  // namespace

double fim_entry(ParamId i, ParamId j, const PathSet& paths, const SensingOperator& op,
                 double sigma_v2) {
  check_entry_inputs(paths, sigma_v2);
  for (const ParamId& id : {i, j})
    if (id.path < 0 || id.path >= paths.paths())
      throw Error(ErrorCode::dimension_mismatch, "fim_entry: path index out of range");
  return detail::fisher_entry(i, j, realised_gains(paths),
                              realised_builders(paths, op.array()), op.K(), sigma_v2);
}

FisherMatrix assemble_fim_nonrandom(const PathSet& paths, const SensingOperator& op,
                                    double sigma_v2) {
  check_entry_inputs(paths, sigma_v2);
  return {detail::assemble(paths.paths(), realised_gains(paths),
                           realised_builders(paths, op.array()), op.K(), sigma_v2),
          ParamIndex(paths.paths()), FisherKind::nonrandom};
}

}  // namespace mmwcrlb
