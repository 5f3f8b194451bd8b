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

#include "rotsurf/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

Vec extract(const ChartJets& j, double Jet2::*field) {
  Vec v = Vec::zero(j.n);
  for (int i = 0; i < j.n; ++i) v[i] = j.coord[static_cast<std::size_t>(i)].*field;
  return v;
}

}  // namespace

Vec ChartJets::position() const { return extract(*this, &Jet2::val); }
Vec ChartJets::xu() const { return extract(*this, &Jet2::du); }
Vec ChartJets::xv() const { return extract(*this, &Jet2::dv); }
Vec ChartJets::xuu() const { return extract(*this, &Jet2::duu); }
Vec ChartJets::xuv() const { return extract(*this, &Jet2::duv); }
Vec ChartJets::xvv() const { return extract(*this, &Jet2::dvv); }

ChartJets eval_chart(const Chart& chart, double u, double v) {
  if (!chart.domain.contains(u, v))
    throw OutOfDomainError("point (" + detail::fmt_value(u) + ", " +
                           detail::fmt_value(v) +
                           ") lies outside the chart domain");
  return chart.eval(u, v);
}

FirstFundamentalForm first_form(const ChartJets& jets) {
  const Vec Xu = jets.xu(), Xv = jets.xv();
  const Vec Xuu = jets.xuu(), Xuv = jets.xuv(), Xvv = jets.xvv();

  FirstFundamentalForm f;
  f.E = dot(Xu, Xu);
  f.F = dot(Xu, Xv);
  f.G = dot(Xv, Xv);
  f.W2 = f.E * f.G - f.F * f.F;
  if (!(f.W2 > kRegularityEps))
    throw DegeneratePointError("degenerate point: E*G - F^2 = " +
                               detail::fmt_value(f.W2));
  f.E_u = 2.0 * dot(Xuu, Xu);
  f.E_v = 2.0 * dot(Xuv, Xu);
  f.F_u = dot(Xuu, Xv) + dot(Xu, Xuv);
  f.F_v = dot(Xuv, Xv) + dot(Xu, Xvv);
  f.G_u = 2.0 * dot(Xuv, Xv);
  f.G_v = 2.0 * dot(Xvv, Xv);
  return f;
}

OrthoFrames frames(const ChartJets& jets, const FirstFundamentalForm& form) {
  const Vec Xu = jets.xu(), Xv = jets.xv();
  const int n = jets.n;

  OrthoFrames fr;
  const double su = std::sqrt(form.E);
  fr.b11 = 1.0 / su;
  fr.e1 = fr.b11 * Xu;

  // Gram-Schmidt of X_v against e1; |w| = W / sqrt(E) at a regular point.
  Vec w = Xv - dot(Xv, fr.e1) * fr.e1;
  const double wn = norm(w);
  if (!(wn > 0.0))
    throw DegeneratePointError("tangent vectors are parallel");
  fr.e2 = (1.0 / wn) * w;
  const double W = std::sqrt(form.W2);
  fr.b21 = -form.F / (su * W);
  fr.b22 = su / W;

  // Normal frame: project the standard basis onto the normal space and
  // keep the n-2 candidates with the largest residual norms.
  fr.normal_count = n - 2;
  bool taken[4] = {false, false, false, false};
  for (int k = 0; k < fr.normal_count; ++k) {
    int best = -1;
    double best_norm = 0.0;
    Vec best_res;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      Vec r = Vec::zero(n);
      r[i] = 1.0;
      r -= dot(r, fr.e1) * fr.e1;
      r -= dot(r, fr.e2) * fr.e2;
      for (int m = 0; m < k; ++m)
        r -= dot(r, fr.normal[static_cast<std::size_t>(m)]) *
             fr.normal[static_cast<std::size_t>(m)];
      const double rn = norm(r);
      if (rn > best_norm) {
        best_norm = rn;
        best = i;
        best_res = r;
      }
    }
    if (best < 0 || best_norm < 1e-10)
      throw FrameError("normal space is rank deficient");
    taken[best] = true;
    Vec nk = (1.0 / best_norm) * best_res;
    for (int i = 0; i < n; ++i) {
      if (std::fabs(nk[i]) > 1e-9) {
        if (nk[i] < 0.0) nk = -nk;
        break;
      }
    }
    fr.normal[static_cast<std::size_t>(k)] = nk;
  }
  return fr;
}

SecondFundamentalForm second_form(const ChartJets& jets,
                                  const OrthoFrames& fr) {
  const Vec Xuu = jets.xuu(), Xuv = jets.xuv(), Xvv = jets.xvv();

  SecondFundamentalForm s;
  s.normal_count = fr.normal_count;
  for (int k = 0; k < fr.normal_count; ++k) {
    const Vec& N = fr.normal[static_cast<std::size_t>(k)];
    const double L = dot(Xuu, N);
    const double M = dot(Xuv, N);
    const double P = dot(Xvv, N);
    // h is bilinear in the tangent arguments, so transform with the
    // {X_u, X_v} -> {e1, e2} coefficients.
    const double h11 = fr.b11 * fr.b11 * L;
    const double h12 = fr.b11 * (fr.b21 * L + fr.b22 * M);
    const double h22 =
        fr.b21 * fr.b21 * L + 2.0 * fr.b21 * fr.b22 * M + fr.b22 * fr.b22 * P;
    auto& hk = s.h[static_cast<std::size_t>(k)];
    hk[0][0] = h11;
    hk[0][1] = h12;
    hk[1][0] = h12;  // mirrored, symmetric by construction
    hk[1][1] = h22;
  }
  return s;
}

Mat2 shape_operator(const SecondFundamentalForm& sff, int normal_index) {
  if (normal_index < 0 || normal_index >= sff.normal_count)
    throw InvalidInputError("normal index out of range");
  const auto& hk = sff.h[static_cast<std::size_t>(normal_index)];
  return Mat2{{{hk[0][0], hk[0][1]}, {hk[1][0], hk[1][1]}}};
}

double gaussian_curvature(const SecondFundamentalForm& sff) {
  double K = 0.0;
  for (int k = 0; k < sff.normal_count; ++k) {
    const auto& hk = sff.h[static_cast<std::size_t>(k)];
    K += hk[0][0] * hk[1][1] - hk[0][1] * hk[0][1];
  }
  return K;
}

Vec mean_curvature_vector(const SecondFundamentalForm& sff,
                          const OrthoFrames& fr) {
  Vec H = Vec::zero(fr.e1.n);
  for (int k = 0; k < sff.normal_count; ++k) {
    const auto& hk = sff.h[static_cast<std::size_t>(k)];
    H += (0.5 * (hk[0][0] + hk[1][1])) * fr.normal[static_cast<std::size_t>(k)];
  }
  return H;
}

CurvatureReport curvature_report(const ChartJets& jets) {
  const FirstFundamentalForm form = first_form(jets);
  const OrthoFrames fr = frames(jets, form);
  const SecondFundamentalForm sff = second_form(jets, fr);
  CurvatureReport r;
  r.K = gaussian_curvature(sff);
  r.H_vec = mean_curvature_vector(sff, fr);
  r.H_norm = norm(r.H_vec);
  return r;
}

Vec laplace_beltrami_coords(const ChartJets& jets,
                            const FirstFundamentalForm& f) {
  const Vec Xu = jets.xu(), Xv = jets.xv();
  const Vec Xuu = jets.xuu(), Xuv = jets.xuv(), Xvv = jets.xvv();

  const double W = std::sqrt(f.W2);
  const double W2_u = f.E_u * f.G + f.E * f.G_u - 2.0 * f.F * f.F_u;
  const double W2_v = f.E_v * f.G + f.E * f.G_v - 2.0 * f.F * f.F_v;
  const double W_u = W2_u / (2.0 * W);
  const double W_v = W2_v / (2.0 * W);

  // P = (G X_u - F X_v)/W, Q = (E X_v - F X_u)/W; Delta X = -(P_u + Q_v)/W.
  const int n = jets.n;
  Vec out = Vec::zero(n);
  for (int i = 0; i < n; ++i) {
    const double P_num = f.G * Xu[i] - f.F * Xv[i];
    const double P_num_u =
        f.G_u * Xu[i] + f.G * Xuu[i] - f.F_u * Xv[i] - f.F * Xuv[i];
    const double P_u = P_num_u / W - P_num * W_u / f.W2;

    const double Q_num = f.E * Xv[i] - f.F * Xu[i];
    const double Q_num_v =
        f.E_v * Xv[i] + f.E * Xvv[i] - f.F_v * Xu[i] - f.F * Xuv[i];
    const double Q_v = Q_num_v / W - Q_num * W_v / f.W2;

    out[i] = -(P_u + Q_v) / W;
  }
  return out;
}

ResidualReport beltrami_check(const Chart& chart, const GridSpec& grid) {
  ResidualReport rep;
  rep.normalization = "per-sample |Delta x + 2 H| / (1 + |Delta x|)";
  double sum_sq = 0.0;
  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v =
          grid_point(chart.domain.v0, chart.domain.v1, grid.nv, j);
      try {
        const ChartJets jets = chart.eval(u, v);
        const FirstFundamentalForm form = first_form(jets);
        const OrthoFrames fr = frames(jets, form);
        const SecondFundamentalForm sff = second_form(jets, fr);
        const Vec H = mean_curvature_vector(sff, fr);
        const Vec lap = laplace_beltrami_coords(jets, form);
        const double r = norm(lap + 2.0 * H) / (1.0 + norm(lap));
        rep.max_abs = std::max(rep.max_abs, r);
        sum_sq += r * r;
        ++rep.samples_used;
      } catch (const DegeneratePointError&) {
        ++rep.samples_excluded;
      } catch (const DomainError&) {
        ++rep.samples_excluded;
      }
    }
  }
  if (rep.samples_used > 0)
    rep.rms = std::sqrt(sum_sq / static_cast<double>(rep.samples_used));
  return rep;
}

}  // namespace rotsurf
