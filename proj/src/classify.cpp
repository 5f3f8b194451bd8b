// Copyright 2026 The Rotsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rotsurf/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

struct Accumulator {
  ResidualReport rep;
  double sum_sq = 0.0;

  void include(double r) {
    rep.max_abs = std::max(rep.max_abs, std::fabs(r));
    sum_sq += r * r;
    ++rep.samples_used;
  }
  void exclude() { ++rep.samples_excluded; }
  ResidualReport finish() {
    if (rep.samples_used > 0)
      rep.rms = std::sqrt(sum_sq / static_cast<double>(rep.samples_used));
    return rep;
  }
};

// Normalization applied to every condition expression: divide by one plus
// the absolute values of its additive terms, making thresholds scale-free.
double normalized(double expr, std::initializer_list<double> terms) {
  double denom = 1.0;
  for (double t : terms) denom += std::fabs(t);
  return std::fabs(expr) / denom;
}

struct ProfileSample {
  double f, fp, fpp;
  double g, gp, gpp;
};

ProfileSample sample_profile(const ProfileJets& p) {
  return {p.f.val, p.f.du, p.f.duu, p.g.val, p.g.du, p.g.duu};
}

// Iterate the closed-form path over a u-grid; evaluation failures count as
// excluded samples.
template <typename Profile, typename Fn>
void for_profile_grid(const Profile& profile, int nu, Accumulator& acc,
                      Fn&& fn) {
  for (int i = 0; i < nu; ++i) {
    const double u = grid_point(profile.u.lo, profile.u.hi, nu, i);
    try {
      const ProfileSample s = sample_profile(profile.at(u));
      fn(u, s);
    } catch (const DomainError&) {
      acc.exclude();
    } catch (const DegeneratePointError&) {
      acc.exclude();
    }
  }
}

// Generic |K| / |H| path over the full parameter grid.
template <typename Fn>
void for_chart_grid(const Chart& chart, const GridSpec& grid, Accumulator& acc,
                    Fn&& fn) {
  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v =
          grid_point(chart.domain.v0, chart.domain.v1, grid.nv, j);
      try {
        fn(chart.eval(u, v));
      } catch (const DomainError&) {
        acc.exclude();
      } catch (const DegeneratePointError&) {
        acc.exclude();
      }
    }
  }
}

}  // namespace

ResidualReport flatness_residual(const Chart& chart, const GridSpec& grid) {
  Accumulator acc;
  if (chart.rotation) {
    const RotationProfile& pr = *chart.rotation;
    const double c = pr.c, d = pr.d;
    acc.rep.normalization =
        "closed-form flatness polynomial / (1 + sum |term|)";
    for_profile_grid(pr, grid.nu, acc, [&](double, const ProfileSample& s) {
      const double E = s.fp * s.fp + s.gp * s.gp;
      const double G = c * c * s.f * s.f + d * d * s.g * s.g;
      const double t1 = G * (s.gp * s.fpp - s.fp * s.gpp) *
                        (d * d * s.g * s.fp - c * c * s.f * s.gp);
      const double t2 = c * c * d * d * (s.g * s.fp - s.f * s.gp) *
                        (s.g * s.fp - s.f * s.gp) * E;
      acc.include(normalized(t1 - t2, {t1, t2}));
    });
  } else {
    acc.rep.normalization = "|K|";
    for_chart_grid(chart, grid, acc, [&](const ChartJets& jets) {
      acc.include(std::fabs(curvature_report(jets).K));
    });
  }
  return acc.finish();
}

ResidualReport minimality_residual(const Chart& chart, const GridSpec& grid) {
  Accumulator acc;
  if (chart.rotation) {
    const RotationProfile& pr = *chart.rotation;
    const double c = pr.c, d = pr.d;
    acc.rep.normalization =
        "closed-form minimality polynomial / (1 + sum |term|)";
    for_profile_grid(pr, grid.nu, acc, [&](double, const ProfileSample& s) {
      const double E = s.fp * s.fp + s.gp * s.gp;
      const double G = c * c * s.f * s.f + d * d * s.g * s.g;
      const double t1 = G * (s.gp * s.fpp - s.fp * s.gpp);
      const double t2 = (d * d * s.g * s.fp - c * c * s.f * s.gp) * E;
      acc.include(normalized(t1 + t2, {t1, t2}));
    });
  } else {
    acc.rep.normalization = "|H|";
    for_chart_grid(chart, grid, acc, [&](const ChartJets& jets) {
      acc.include(curvature_report(jets).H_norm);
    });
  }
  return acc.finish();
}

PseudoUmbilicalResidual pseudo_umbilical_residual(const Chart& chart,
                                                  const GridSpec& grid) {
  PseudoUmbilicalResidual out;

  if (chart.rotation) {
    const RotationProfile& pr = *chart.rotation;
    const double c = pr.c, d = pr.d;
    Accumulator acc;
    acc.rep.normalization =
        "closed-form pseudo-umbilical polynomial / (1 + sum |term|)";
    for_profile_grid(pr, grid.nu, acc, [&](double, const ProfileSample& s) {
      const double E = s.fp * s.fp + s.gp * s.gp;
      const double G = c * c * s.f * s.f + d * d * s.g * s.g;
      const double t1 = G * (s.gp * s.fpp - s.fp * s.gpp);
      const double t2 = (d * d * s.g * s.fp - c * c * s.f * s.gp) * E;
      acc.include(normalized(t1 - t2, {t1, t2}));
    });
    out.closed_form = acc.finish();
  }

  Accumulator acc;
  acc.rep.normalization =
      "max_ij |<h(e_i,e_j),H> - |H|^2 d_ij| / (1 + sum |term|), samples with "
      "|H| <= 1e-9 excluded";
  for_chart_grid(chart, grid, acc, [&](const ChartJets& jets) {
    const FirstFundamentalForm form = first_form(jets);
    const OrthoFrames fr = frames(jets, form);
    const SecondFundamentalForm sff = second_form(jets, fr);
    const Vec H = mean_curvature_vector(sff, fr);
    const double Hn = norm(H);
    if (Hn <= kMeanCurvatureFloor) {
      acc.exclude();
      return;
    }
    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        Vec h_ab = Vec::zero(jets.n);
        for (int k = 0; k < sff.normal_count; ++k)
          h_ab += sff.h[static_cast<std::size_t>(k)][static_cast<std::size_t>(
                      a)][static_cast<std::size_t>(b)] *
                  fr.normal[static_cast<std::size_t>(k)];
        const double val = dot(h_ab, H);
        const double target = (a == b) ? Hn * Hn : 0.0;
        worst = std::max(worst, normalized(val - target, {val, target}));
      }
    }
    acc.include(worst);
  });
  out.generic = acc.finish();
  out.vacuous =
      out.generic.samples_used == 0 && out.generic.samples_excluded > 0;
  return out;
}

OdeResidual vranceanu_ode_residual(const ExprAst& r_expr, const Interval& u,
                                   VranceanuOde kind, int nu,
                                   std::optional<double> c) {
  OdeResidual out;
  Accumulator acc;

  struct Sample {
    double uu, r, rp, rpp;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(nu));
  for (int i = 0; i < nu; ++i) {
    const double uu = grid_point(u.lo, u.hi, nu, i);
    try {
      const Jet2 jr = eval_jet(r_expr, Jet2::var_u(uu));
      if (!(jr.val > 0.0)) {
        acc.exclude();
        continue;
      }
      samples.push_back({uu, jr.val, jr.du, jr.duu});
    } catch (const DomainError&) {
      acc.exclude();
    }
  }

  switch (kind) {
    case VranceanuOde::flat: {
      acc.rep.normalization = "|r r'' - r'^2| / (1 + sum |term|)";
      for (const Sample& s : samples) {
        const double t1 = s.r * s.rpp, t2 = s.rp * s.rp;
        acc.include(normalized(t1 - t2, {t1, t2}));
      }
      break;
    }
    case VranceanuOde::minimal: {
      acc.rep.normalization = "|r r'' - 3 r'^2 - 2 r^2| / (1 + sum |term|)";
      for (const Sample& s : samples) {
        const double t1 = s.r * s.rpp;
        const double t2 = 3.0 * s.rp * s.rp;
        const double t3 = 2.0 * s.r * s.r;
        acc.include(normalized(t1 - t2 - t3, {t1, t2, t3}));
      }
      break;
    }
    case VranceanuOde::cft: {
      acc.rep.normalization =
          "|r r' (cos^2 u - c sin^2 u) - r^2 cos u sin u (1+c)| / "
          "(1 + sum |term|)";
      // Split the condition as p - c q with p, q independent of c, then
      // take c as supplied or from least squares.
      double spq = 0.0, sqq = 0.0;
      std::vector<std::pair<double, double>> pq;
      pq.reserve(samples.size());
      for (const Sample& s : samples) {
        const double cu = std::cos(s.uu), su = std::sin(s.uu);
        const double p = s.r * s.rp * cu * cu - s.r * s.r * su * cu;
        const double q = s.r * s.rp * su * su + s.r * s.r * su * cu;
        pq.emplace_back(p, q);
        spq += p * q;
        sqq += q * q;
      }
      if (c) {
        out.constant = *c;
      } else if (sqq > 1e-30) {
        out.constant = spq / sqq;
      }
      const double cc = out.constant.value_or(0.0);
      for (const auto& [p, q] : pq) {
        if (out.constant)
          acc.include(normalized(p - cc * q, {p, cc * q}));
        else
          acc.include(normalized(p, {p}));
      }
      break;
    }
  }
  out.report = acc.finish();
  return out;
}

PointwiseDiagonal pointwise_diagonal(const RotationProfile& profile, int nu) {
  PointwiseDiagonal out;
  out.labels = {"a11=a22", "a33=a44"};
  const double c = profile.c, d = profile.d;
  for (int i = 0; i < nu; ++i) {
    const double u = grid_point(profile.u.lo, profile.u.hi, nu, i);
    try {
      const ProfileSample s = sample_profile(profile.at(u));
      const double E = s.fp * s.fp + s.gp * s.gp;
      const double G = c * c * s.f * s.f + d * d * s.g * s.g;
      if (std::fabs(s.f) <= kDenominatorEps ||
          std::fabs(s.g) <= kDenominatorEps || E <= kRegularityEps ||
          G <= kRegularityEps) {
        ++out.samples_excluded;
        continue;
      }
      const double bracket =
          (d * d * s.fp * s.g - c * c * s.f * s.gp) * E +
          (s.gp * s.fpp - s.fp * s.gpp) * G;
      out.u.push_back(u);
      out.first.push_back(-s.gp * bracket / (s.f * E * E * G));
      out.second.push_back(s.fp * bracket / (s.g * E * E * G));
      ++out.samples_used;
    } catch (const DomainError&) {
      ++out.samples_excluded;
    } catch (const DegeneratePointError&) {
      ++out.samples_excluded;
    }
  }
  if (out.samples_used == 0)
    throw UndeterminedError(
        "every sample of the pointwise diagonal was excluded");
  for (const auto* series : {&out.first, &out.second}) {
    const auto [lo, hi] = std::minmax_element(series->begin(), series->end());
    out.constancy = std::max(out.constancy, *hi - *lo);
  }
  return out;
}

PointwiseDiagonal pointwise_diagonal(const RevolutionProfile& profile,
                                     int nu) {
  PointwiseDiagonal out;
  out.labels = {"a11", "a22=a33"};
  for (int i = 0; i < nu; ++i) {
    const double u = grid_point(profile.u.lo, profile.u.hi, nu, i);
    try {
      const ProfileSample s = sample_profile(profile.at(u));
      const double E = s.fp * s.fp + s.gp * s.gp;
      if (std::fabs(s.f) <= kDenominatorEps ||
          std::fabs(s.g) <= kDenominatorEps || E <= kRegularityEps) {
        ++out.samples_excluded;
        continue;
      }
      const double bracket = s.g * (s.gp * s.fpp - s.fp * s.gpp) + s.fp * E;
      out.u.push_back(u);
      out.first.push_back(-s.gp * bracket / (s.f * s.g * E * E));
      out.second.push_back(s.fp * bracket / (s.g * s.g * E * E));
      ++out.samples_used;
    } catch (const DomainError&) {
      ++out.samples_excluded;
    } catch (const DegeneratePointError&) {
      ++out.samples_excluded;
    }
  }
  if (out.samples_used == 0)
    throw UndeterminedError(
        "every sample of the pointwise diagonal was excluded");
  for (const auto* series : {&out.first, &out.second}) {
    const auto [lo, hi] = std::minmax_element(series->begin(), series->end());
    out.constancy = std::max(out.constancy, *hi - *lo);
  }
  return out;
}

DiagonalFit fit_diagonal(const Chart& chart, const GridSpec& grid) {
  const int n = chart.ambient_dim;
  DiagonalFit out;
  out.a.assign(static_cast<std::size_t>(n), std::nullopt);
  out.coordinate_mass.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<double> sxx(static_cast<std::size_t>(n), 0.0);
  std::vector<double> sdx(static_cast<std::size_t>(n), 0.0);
  std::vector<double> sdd(static_cast<std::size_t>(n), 0.0);

  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v =
          grid_point(chart.domain.v0, chart.domain.v1, grid.nv, j);
      try {
        const ChartJets jets = chart.eval(u, v);
        const FirstFundamentalForm form = first_form(jets);
        const Vec lap = laplace_beltrami_coords(jets, form);
        const Vec x = jets.position();
        for (int k = 0; k < n; ++k) {
          const auto sk = static_cast<std::size_t>(k);
          sxx[sk] += x[k] * x[k];
          sdx[sk] += lap[k] * x[k];
          sdd[sk] += lap[k] * lap[k];
        }
        ++out.samples_used;
      } catch (const DomainError&) {
        ++out.samples_excluded;
      } catch (const DegeneratePointError&) {
        ++out.samples_excluded;
      }
    }
  }

  const double mass_floor =
      1e-10 * static_cast<double>(grid.nu) * static_cast<double>(grid.nv);
  double misfit = 0.0, total = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto sk = static_cast<std::size_t>(k);
    out.coordinate_mass[sk] = sxx[sk];
    if (sxx[sk] < mass_floor) continue;  // undetermined, left out of the fit
    const double a = sdx[sk] / sxx[sk];
    out.a[sk] = a;
    misfit += std::max(0.0, sdd[sk] - sdx[sk] * sdx[sk] / sxx[sk]);
    total += sdd[sk];
  }
  out.residual = std::sqrt(misfit) / std::sqrt(total + 1e-30);
  return out;
}

namespace {

RelationFit fit_relation(const std::function<ProfileJets(double)>& at,
                         const Interval& interval, int nu, double sign,
                         const std::string& form) {
  RelationFit out;
  out.form = form;
  Accumulator acc;
  acc.rep.normalization = "per-sample |" + form + "| / (1 + sum |term|)";

  std::vector<std::pair<double, double>> pq;  // (f f', g g')
  double spq = 0.0, sqq = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double u = grid_point(interval.lo, interval.hi, nu, i);
    try {
      const ProfileSample s = sample_profile(at(u));
      const double p = s.f * s.fp;
      const double q = s.g * s.gp;
      pq.emplace_back(p, q);
      spq += p * q;
      sqq += q * q;
    } catch (const DomainError&) {
      acc.exclude();
    } catch (const DegeneratePointError&) {
      acc.exclude();
    }
  }

  // sign = +1 fits f f' + k g g' = 0; sign = -1 fits f f' - k g g' = 0.
  if (sqq > 1e-30) out.constant = -sign * spq / sqq;
  for (const auto& [p, q] : pq) {
    if (out.constant) {
      const double t2 = sign * (*out.constant) * q;
      acc.include(normalized(p + t2, {p, t2}));
    } else {
      acc.include(normalized(p, {p}));
    }
  }
  out.report = acc.finish();
  return out;
}

}  // namespace

RelationFit relation_residual(const RotationProfile& profile, int nu) {
  // f f' = c g g', fitted by least squares in c.
  return fit_relation(profile.at, profile.u, nu, -1.0, "ff' - c*gg'");
}

RelationFit relation_residual(const RevolutionProfile& profile, int nu) {
  // f f' + lambda g g' = 0, fitted by least squares in lambda.
  return fit_relation(profile.at, profile.u, nu, +1.0, "ff' + lambda*gg'");
}

ClassificationVerdict classify_surface(const Chart& chart,
                                       const GridSpec& grid,
                                       const Thresholds& thresholds) {
  const double tau = thresholds.tau;
  ClassificationVerdict verdict;
  verdict.threshold = tau;

  const ResidualReport flat = flatness_residual(chart, grid);
  verdict.flat.yes = flat.max_abs < tau;
  verdict.flat.residual = flat.max_abs;

  const ResidualReport minimal = minimality_residual(chart, grid);
  verdict.minimal.yes = minimal.max_abs < tau;
  verdict.minimal.residual = minimal.max_abs;

  const PseudoUmbilicalResidual pu = pseudo_umbilical_residual(chart, grid);
  verdict.pseudo_umbilical.yes = pu.vacuous || pu.generic.max_abs < tau;
  verdict.pseudo_umbilical.residual = pu.vacuous ? 0.0 : pu.generic.max_abs;
  if (pu.vacuous)
    verdict.pseudo_umbilical.note = "vacuous: H vanishes on the grid";

  const DiagonalFit fit = fit_diagonal(chart, grid);
  verdict.coordinate_finite_type.residual = fit.residual;
  if (verdict.minimal.yes) {
    verdict.coordinate_finite_type.yes = true;
    verdict.coordinate_finite_type.note = "minimal, so A = 0 fits";
    verdict.pseudo_umbilical.yes = true;
    if (verdict.pseudo_umbilical.note.empty())
      verdict.pseudo_umbilical.note = "minimal surfaces are pseudo-umbilical";
  } else {
    bool constant_entries = true;
    if (chart.rotation) {
      const PointwiseDiagonal pw = pointwise_diagonal(*chart.rotation, grid.nu);
      constant_entries = pw.constancy < tau;
      verdict.coordinate_finite_type.note =
          "pointwise constancy " + detail::fmt_value(pw.constancy);
    } else if (chart.revolution) {
      const PointwiseDiagonal pw =
          pointwise_diagonal(*chart.revolution, grid.nu);
      constant_entries = pw.constancy < tau;
      verdict.coordinate_finite_type.note =
          "pointwise constancy " + detail::fmt_value(pw.constancy);
    }
    verdict.coordinate_finite_type.yes =
        fit.residual < tau && constant_entries;
  }
  return verdict;
}

}  // namespace rotsurf
