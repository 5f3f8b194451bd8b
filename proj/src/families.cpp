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

#include "rotsurf/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProbePoints = 33;  // endpoints included

std::string fmt(double x) { return detail::fmt_value(x); }

std::string fmt_expr_num(double x) {
  char buf[48];
  if (x < 0)
    std::snprintf(buf, sizeof(buf), "(%.17g)", x);
  else
    std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Evaluate the profile on a coarse grid, endpoints included, and hand each
// sample to `check`; evaluation failures become construction errors.
void probe_profile(const std::function<ProfileJets(double)>& at,
                   const Interval& u,
                   const std::function<void(double, const ProfileJets&)>& check) {
  if (!(u.lo < u.hi))
    throw ConstructionError("u-interval is degenerate: [" + fmt(u.lo) + ", " +
                            fmt(u.hi) + "]");
  for (int i = 0; i < kProbePoints; ++i) {
    const double uu = u.lo + (u.hi - u.lo) * i / (kProbePoints - 1);
    ProfileJets p;
    try {
      p = at(uu);
    } catch (const Error& e) {
      throw ConstructionError("profile undefined at u = " + fmt(uu) + ": " +
                              e.what());
    }
    check(uu, p);
  }
}

Chart finish_rotation_chart(std::shared_ptr<RotationProfile> profile,
                            std::string family,
                            std::optional<Interval> v_override) {
  const double c = profile->c, d = profile->d;
  probe_profile(profile->at, profile->u, [&](double uu, const ProfileJets& p) {
    const double radius2 =
        c * c * p.f.val * p.f.val + d * d * p.g.val * p.g.val;
    if (!(radius2 > 0.0))
      throw ConstructionError("c^2 f^2 + d^2 g^2 must be positive; it is " +
                              fmt(radius2) + " at u = " + fmt(uu));
    const double speed2 = p.f.du * p.f.du + p.g.du * p.g.du;
    if (!(speed2 > 0.0))
      throw ConstructionError("f'^2 + g'^2 must be positive; it is " +
                              fmt(speed2) + " at u = " + fmt(uu));
  });

  Chart chart;
  chart.ambient_dim = 4;
  chart.family = std::move(family);
  const Interval v = v_override.value_or(Interval{0.0, kTwoPi});
  chart.domain = Domain{profile->u.lo, profile->u.hi, v.lo, v.hi};
  chart.rotation = profile;
  chart.eval = [profile](double uu, double vv) {
    const ProfileJets p = profile->at(uu);
    const Jet2 jv = Jet2::var_v(vv);
    const Jet2 cv = cos(profile->c * jv), sv = sin(profile->c * jv);
    const Jet2 cw = cos(profile->d * jv), sw = sin(profile->d * jv);
    ChartJets out;
    out.n = 4;
    out.coord[0] = p.f * cv;
    out.coord[1] = p.f * sv;
    out.coord[2] = p.g * cw;
    out.coord[3] = p.g * sw;
    return out;
  };
  return chart;
}

}  // namespace

Chart make_chart(const GeneralizedRotationParams& params) {
  if (!(params.c > 0.0) || !(params.d > 0.0))
    throw ConstructionError("rotation speeds must satisfy c > 0 and d > 0");
  auto profile = std::make_shared<RotationProfile>();
  profile->c = params.c;
  profile->d = params.d;
  profile->u = params.u;
  const ExprAst f = params.f, g = params.g;
  profile->at = [f, g](double uu) {
    const Jet2 ju = Jet2::var_u(uu);
    return ProfileJets{eval_jet(f, ju), eval_jet(g, ju)};
  };
  Chart chart =
      finish_rotation_chart(std::move(profile), "generalized_rotation", {});
  chart.params = {{"f", f.source()},
                  {"g", g.source()},
                  {"c", fmt(params.c)},
                  {"d", fmt(params.d)}};
  return chart;
}

Chart make_chart(const VranceanuParams& params) {
  auto profile = std::make_shared<RotationProfile>();
  profile->c = 1.0;
  profile->d = 1.0;
  profile->u = params.u;
  profile->vranceanu_r = params.r;
  const ExprAst r = params.r;
  profile->at = [r](double uu) {
    const Jet2 ju = Jet2::var_u(uu);
    const Jet2 jr = eval_jet(r, ju);
    return ProfileJets{jr * cos(ju), jr * sin(ju)};
  };
  // r > 0 on the sampled domain; the rotation invariants then follow from
  // c^2 f^2 + d^2 g^2 = r^2 and f'^2 + g'^2 = r'^2 + r^2.
  probe_profile(
      [&](double uu) {
        ProfileJets p;
        p.f = eval_jet(r, Jet2::var_u(uu));
        p.g = p.f;
        return p;
      },
      params.u,
      [&](double uu, const ProfileJets& p) {
        if (!(p.f.val > 0.0))
          throw ConstructionError("r(u) must be positive; it is " +
                                  fmt(p.f.val) + " at u = " + fmt(uu));
      });
  Chart chart = finish_rotation_chart(std::move(profile), "vranceanu", {});
  chart.params = {{"r", params.r.source()}};
  return chart;
}

Chart make_chart(const RevolutionParams& params) {
  auto profile = std::make_shared<RevolutionProfile>();
  profile->u = params.u;
  const ExprAst f = params.f, g = params.g;
  profile->at = [f, g](double uu) {
    const Jet2 ju = Jet2::var_u(uu);
    return ProfileJets{eval_jet(f, ju), eval_jet(g, ju)};
  };
  probe_profile(profile->at, params.u, [&](double uu, const ProfileJets& p) {
    if (!(p.g.val > 0.0))
      throw ConstructionError("g(u) must be positive; it is " + fmt(p.g.val) +
                              " at u = " + fmt(uu));
    const double speed2 = p.f.du * p.f.du + p.g.du * p.g.du;
    if (!(speed2 > 0.0))
      throw ConstructionError("f'^2 + g'^2 must be positive; it is " +
                              fmt(speed2) + " at u = " + fmt(uu));
  });

  Chart chart;
  chart.ambient_dim = 3;
  chart.family = "revolution";
  chart.domain = Domain{params.u.lo, params.u.hi, 0.0, kTwoPi};
  chart.revolution = profile;
  chart.params = {{"f", params.f.source()}, {"g", params.g.source()}};
  chart.eval = [profile](double uu, double vv) {
    const ProfileJets p = profile->at(uu);
    const Jet2 jv = Jet2::var_v(vv);
    ChartJets out;
    out.n = 3;
    out.coord[0] = p.f;
    out.coord[1] = p.g * cos(jv);
    out.coord[2] = p.g * sin(jv);
    return out;
  };
  return chart;
}

Chart make_expression_chart(const std::vector<ExprAst>& coords,
                            const Domain& domain, std::string family_tag) {
  if (coords.size() != 3 && coords.size() != 4)
    throw ConstructionError("an explicit chart needs 3 or 4 coordinates");
  Chart chart;
  chart.ambient_dim = static_cast<int>(coords.size());
  chart.family = std::move(family_tag);
  chart.domain = domain;
  for (std::size_t i = 0; i < coords.size(); ++i)
    chart.params.emplace_back("x" + std::to_string(i + 1),
                              coords[i].source());
  const std::vector<ExprAst> cs = coords;
  chart.eval = [cs](double uu, double vv) {
    const Jet2 ju = Jet2::var_u(uu);
    const Jet2 jv = Jet2::var_v(vv);
    ChartJets out;
    out.n = static_cast<int>(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
      out.coord[i] = eval_jet(cs[i], ju, jv);
    return out;
  };
  return chart;
}

namespace {

const PresetInfo* find_preset(const std::string& name) {
  for (const PresetInfo& p : preset_catalog())
    if (p.name == name) return &p;
  return nullptr;
}

std::map<std::string, double> resolve_args(
    const PresetInfo& info, const std::map<std::string, double>& args) {
  std::map<std::string, double> out;
  for (const auto& [key, value] : info.defaults) out[key] = value;
  for (const auto& [key, value] : args) {
    if (!out.count(key)) {
      std::string allowed;
      for (const auto& [k, v] : info.defaults)
        allowed += (allowed.empty() ? "" : ", ") + k;
      throw ConstructionError("preset '" + info.name +
                              "' does not take a parameter '" + key +
                              "' (allowed: " + (allowed.empty() ? "none" : allowed) +
                              ")");
    }
    out[key] = value;
  }
  return out;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"clifford", "product of two equal circles, r(u) = r", {{"r", 1.0}},
       {0.0, kTwoPi}},
      {"sphere", "round sphere of revolution, f = r cos u, g = r sin u",
       {{"r", 1.0}}, {0.05, std::numbers::pi - 0.05}},
      {"cone", "cone of revolution, f = g = u", {}, {0.1, 2.0}},
      {"catenoid", "catenoid, f = u, g = cosh u", {}, {-1.0, 1.0}},
      {"flat_vranceanu", "flat family, r = lambda*exp(mu*u)",
       {{"lambda", 1.0}, {"mu", 0.3}}, {0.0, kTwoPi}},
      {"minimal_vranceanu", "minimal family, r = 1/sqrt(a sin 2u - b cos 2u)",
       {{"a", 1.0}, {"b", 0.0}}, {0.1, std::numbers::pi / 2.0 - 0.1}},
      {"cft_vranceanu",
       "eigencoordinate family, r = lambda/sqrt((1+c) cos 2u + (1-c))",
       {{"lambda", std::numbers::sqrt2}, {"c", 0.0}}, {0.1, 1.2}},
  };
  return catalog;
}

Chart make_preset(const std::string& name,
                  const std::map<std::string, double>& args,
                  std::optional<Interval> u_override,
                  std::optional<Interval> v_override) {
  const PresetInfo* info = find_preset(name);
  if (!info) throw ConstructionError("unknown preset '" + name + "'");
  const auto a = resolve_args(*info, args);
  const Interval u = u_override.value_or(info->default_u);

  Chart chart;
  if (name == "clifford") {
    VranceanuParams p{parse_or_throw(fmt_expr_num(a.at("r")), VarSet::u_only()),
                      u};
    chart = make_chart(p);
  } else if (name == "sphere") {
    const std::string r = fmt_expr_num(a.at("r"));
    RevolutionParams p{parse_or_throw(r + "*cos(u)", VarSet::u_only()),
                       parse_or_throw(r + "*sin(u)", VarSet::u_only()), u};
    chart = make_chart(p);
  } else if (name == "cone") {
    RevolutionParams p{parse_or_throw("u", VarSet::u_only()),
                       parse_or_throw("u", VarSet::u_only()), u};
    chart = make_chart(p);
  } else if (name == "catenoid") {
    RevolutionParams p{parse_or_throw("u", VarSet::u_only()),
                       parse_or_throw("cosh(u)", VarSet::u_only()), u};
    chart = make_chart(p);
  } else if (name == "flat_vranceanu") {
    VranceanuParams p{
        parse_or_throw(fmt_expr_num(a.at("lambda")) + "*exp(" +
                           fmt_expr_num(a.at("mu")) + "*u)",
                       VarSet::u_only()),
        u};
    chart = make_chart(p);
  } else if (name == "minimal_vranceanu") {
    VranceanuParams p{
        parse_or_throw("1/sqrt(" + fmt_expr_num(a.at("a")) + "*sin(2*u) - " +
                           fmt_expr_num(a.at("b")) + "*cos(2*u))",
                       VarSet::u_only()),
        u};
    chart = make_chart(p);
  } else if (name == "cft_vranceanu") {
    const double c = a.at("c");
    if (c == 1.0)
      throw ConstructionError("cft_vranceanu requires c != 1");
    VranceanuParams p{
        parse_or_throw(fmt_expr_num(a.at("lambda")) + "/sqrt(" +
                           fmt_expr_num(1.0 + c) + "*cos(2*u) + " +
                           fmt_expr_num(1.0 - c) + ")",
                       VarSet::u_only()),
        u};
    chart = make_chart(p);
  } else {
    throw ConstructionError("unknown preset '" + name + "'");
  }
  chart.family = name;
  chart.params = {{"name", name}};
  for (const auto& [key, value] : a) chart.params.emplace_back(key, fmt(value));
  if (v_override)
    chart.domain.v0 = v_override->lo, chart.domain.v1 = v_override->hi;
  return chart;
}

RotationClosedForm rotation_closed_form(const RotationProfile& profile,
                                        double u, double v) {
  const ProfileJets p = profile.at(u);
  const double c = profile.c, d = profile.d;
  const double f = p.f.val, fp = p.f.du, fpp = p.f.duu;
  const double g = p.g.val, gp = p.g.du, gpp = p.g.duu;

  const double E = fp * fp + gp * gp;
  const double G = c * c * f * f + d * d * g * g;
  if (!(E > 1e-300) || !(G > 1e-300))
    throw DegeneratePointError("degenerate profile at u = " + fmt(u));
  const double sE = std::sqrt(E);

  RotationClosedForm out;
  out.A_conn = (c * c * f * fp + d * d * g * gp) / (sE * G);
  out.B_conn = c * d * (f * fp + g * gp) / (sE * G);
  out.h11_1 = (d * d * fp * g - c * c * f * gp) / (sE * G);
  out.h22_1 = (gp * fpp - fp * gpp) / (E * sE);
  out.h12_2 = c * d * (fp * g - f * gp) / (sE * G);
  out.K_closed = (G * (gp * fpp - fp * gpp) * (d * d * g * fp - c * c * f * gp) -
                  c * c * d * d * (g * fp - f * gp) * (g * fp - f * gp) * E) /
                 (E * E * G * G);
  out.H_closed = (G * (gp * fpp - fp * gpp) +
                  (d * d * g * fp - c * c * f * gp) * E) /
                 (2.0 * E * sE * G);

  const double cv = std::cos(c * v), sv = std::sin(c * v);
  const double cw = std::cos(d * v), sw = std::sin(d * v);
  const double sG = std::sqrt(G);
  out.e1 = Vec::zero(4);  // unit tangent along the rotation direction
  out.e1[0] = -c * f * sv / sG;
  out.e1[1] = c * f * cv / sG;
  out.e1[2] = -d * g * sw / sG;
  out.e1[3] = d * g * cw / sG;
  out.e2 = Vec::zero(4);  // unit tangent along the profile direction
  out.e2[0] = fp * cv / sE;
  out.e2[1] = fp * sv / sE;
  out.e2[2] = gp * cw / sE;
  out.e2[3] = gp * sw / sE;
  out.e3 = Vec::zero(4);
  out.e3[0] = gp * cv / sE;
  out.e3[1] = gp * sv / sE;
  out.e3[2] = -fp * cw / sE;
  out.e3[3] = -fp * sw / sE;
  out.e4 = Vec::zero(4);
  out.e4[0] = -d * g * sv / sG;
  out.e4[1] = d * g * cv / sG;
  out.e4[2] = c * f * sw / sG;
  out.e4[3] = -c * f * cw / sG;
  return out;
}

RevolutionClosedForm revolution_closed_form(const RevolutionProfile& profile,
                                            double u, double v) {
  const ProfileJets p = profile.at(u);
  const double f = p.f.val, fp = p.f.du, fpp = p.f.duu;
  const double g = p.g.val, gp = p.g.du, gpp = p.g.duu;
  (void)f;

  const double E = fp * fp + gp * gp;
  if (!(E > 1e-300) || !(std::fabs(g) > 1e-300))
    throw DegeneratePointError("degenerate profile at u = " + fmt(u));
  const double sE = std::sqrt(E);

  RevolutionClosedForm out;
  out.A_conn = gp / (g * sE);
  out.h11_1 = (gp * fpp - fp * gpp) / (E * sE);
  out.h22_1 = fp / (g * sE);
  out.H_closed = 0.5 * (out.h11_1 + out.h22_1);

  const double cv = std::cos(v), sv = std::sin(v);
  out.e1 = Vec::zero(3);
  out.e1[0] = fp / sE;
  out.e1[1] = gp * cv / sE;
  out.e1[2] = gp * sv / sE;
  out.e2 = Vec::zero(3);
  out.e2[1] = -sv;
  out.e2[2] = cv;
  out.e3 = Vec::zero(3);
  out.e3[0] = gp / sE;
  out.e3[1] = -fp * cv / sE;
  out.e3[2] = -fp * sv / sE;
  return out;
}

ResidualReport frame_derivative_residual(const RotationProfile& profile,
                                         const GridSpec& grid,
                                         const FrameResidualOptions& options) {
  ResidualReport rep;
  rep.normalization = "max |numeric frame derivative - closed form|";
  const double h = 1e-5;
  double sum_sq = 0.0;

  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(profile.u.lo, profile.u.hi, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v = grid_point(0.0, kTwoPi, grid.nv, j);
      try {
        const RotationClosedForm cf = rotation_closed_form(profile, u, v);
        const RotationClosedForm up = rotation_closed_form(profile, u + h, v);
        const RotationClosedForm um = rotation_closed_form(profile, u - h, v);
        const RotationClosedForm vp = rotation_closed_form(profile, u, v + h);
        const RotationClosedForm vm = rotation_closed_form(profile, u, v - h);

        const ProfileJets p = profile.at(u);
        const double E = p.f.du * p.f.du + p.g.du * p.g.du;
        const double G = profile.c * profile.c * p.f.val * p.f.val +
                         profile.d * profile.d * p.g.val * p.g.val;
        const double inv_su = 1.0 / std::sqrt(E);
        const double inv_sv = 1.0 / std::sqrt(G);

        const double A = cf.A_conn + options.a_bias;
        const double B = cf.B_conn + options.b_bias;

        // Derivatives of each frame field along the unit tangents; e1 is
        // the v-direction, e2 the u-direction.
        auto d_along_e1 = [&](Vec RotationClosedForm::*field) {
          return (inv_sv / (2.0 * h)) * (vp.*field - vm.*field);
        };
        auto d_along_e2 = [&](Vec RotationClosedForm::*field) {
          return (inv_su / (2.0 * h)) * (up.*field - um.*field);
        };

        const Vec rhs_e1[4] = {
            -A * cf.e2 + cf.h11_1 * cf.e3,              // D_{e1} e1
            A * cf.e1 + cf.h12_2 * cf.e4,               // D_{e1} e2
            -cf.h11_1 * cf.e1 + B * cf.e4,              // D_{e1} e3
            -cf.h12_2 * cf.e2 - B * cf.e3,              // D_{e1} e4
        };
        const Vec rhs_e2[4] = {
            cf.h12_2 * cf.e4,                           // D_{e2} e1
            cf.h22_1 * cf.e3,                           // D_{e2} e2
            -cf.h22_1 * cf.e2,                          // D_{e2} e3
            -cf.h12_2 * cf.e1,                          // D_{e2} e4
        };
        const Vec lhs_e1[4] = {
            d_along_e1(&RotationClosedForm::e1),
            d_along_e1(&RotationClosedForm::e2),
            d_along_e1(&RotationClosedForm::e3),
            d_along_e1(&RotationClosedForm::e4),
        };
        const Vec lhs_e2[4] = {
            d_along_e2(&RotationClosedForm::e1),
            d_along_e2(&RotationClosedForm::e2),
            d_along_e2(&RotationClosedForm::e3),
            d_along_e2(&RotationClosedForm::e4),
        };

        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
          worst = std::max(worst, norm(lhs_e1[k] - rhs_e1[k]));
          worst = std::max(worst, norm(lhs_e2[k] - rhs_e2[k]));
        }
        rep.max_abs = std::max(rep.max_abs, worst);
        sum_sq += worst * worst;
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
