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

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotsurf/expr.hpp"
#include "rotsurf/geometry.hpp"

namespace rotsurf {

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// Univariate jets of a profile pair at one u; the v-slots stay zero.
struct ProfileJets {
  Jet2 f, g;
};

/// Profile of a generalized rotation chart in E^4:
/// X(u,v) = (f cos cv, f sin cv, g cos dv, g sin dv).
struct RotationProfile {
  double c = 1, d = 1;
  Interval u;
  std::function<ProfileJets(double)> at;
  /// Set when the profile came from r(u) via f = r cos u, g = r sin u,
  /// c = d = 1; the classification ODEs act on r directly.
  std::optional<ExprAst> vranceanu_r;
};

/// Profile of a surface of revolution in E^3:
/// X(u,v) = (f, g cos v, g sin v).
struct RevolutionProfile {
  Interval u;
  std::function<ProfileJets(double)> at;
};

struct GeneralizedRotationParams {
  double c = 1, d = 1;
  ExprAst f, g;
  Interval u;
};

struct RevolutionParams {
  ExprAst f, g;
  Interval u;
};

struct VranceanuParams {
  ExprAst r;
  Interval u;
};

/// Chart factories. Each validates its family invariants on a coarse probe
/// grid (endpoints included) and raises ConstructionError with the violated
/// condition and a witness point. v defaults to a full turn, [0, 2*pi].
Chart make_chart(const GeneralizedRotationParams& params);
Chart make_chart(const RevolutionParams& params);
Chart make_chart(const VranceanuParams& params);

/// Named presets:
///   clifford(r)              product-of-circles torus, r(u) = r
///   sphere(r)                revolution, f = r cos u, g = r sin u
///   cone                     revolution, f = g = u
///   catenoid                 revolution, f = u, g = cosh u
///   flat_vranceanu(lambda, mu)     r = lambda e^{mu u}
///   minimal_vranceanu(a, b)        r = 1/sqrt(a sin 2u - b cos 2u)
///   cft_vranceanu(lambda, c)       r = lambda/sqrt((1+c) cos 2u + (1-c)),
///                                  c = 1 rejected
Chart make_preset(const std::string& name,
                  const std::map<std::string, double>& args = {},
                  std::optional<Interval> u_override = {},
                  std::optional<Interval> v_override = {});

struct PresetInfo {
  std::string name;
  std::string summary;
  std::vector<std::pair<std::string, double>> defaults;
  Interval default_u;
};
const std::vector<PresetInfo>& preset_catalog();

/// Chart from one expression per ambient coordinate, each in (u, v).
Chart make_expression_chart(const std::vector<ExprAst>& coords,
                            const Domain& domain,
                            std::string family_tag = "explicit");

/// Closed-form frame, connection and form coefficients of a generalized
/// rotation chart. e1 is the unit tangent along the rotation direction and
/// e2 the unit tangent along the profile direction; the coefficient labels
/// below refer to that ordering (h11_1 pairs with e1, h22_1 with e2).
struct RotationClosedForm {
  double A_conn = 0, B_conn = 0;
  double h11_1 = 0, h22_1 = 0, h12_2 = 0;
  double K_closed = 0;
  double H_closed = 0;  // coefficient of the mean curvature vector on e3
  Vec e1, e2, e3, e4;
};
RotationClosedForm rotation_closed_form(const RotationProfile& profile,
                                        double u, double v = 0.0);

struct RevolutionClosedForm {
  double A_conn = 0;
  double h11_1 = 0, h22_1 = 0;  // h11_1 pairs with e1 (profile direction)
  double H_closed = 0;
  Vec e1, e2, e3;
};
RevolutionClosedForm revolution_closed_form(const RevolutionProfile& profile,
                                            double u, double v = 0.0);

/// Test hook: bias the connection coefficients used on the closed-form
/// side of the Gauss/Weingarten comparison.
struct FrameResidualOptions {
  double a_bias = 0.0;
  double b_bias = 0.0;
};

/// Differentiate the closed-form frame fields numerically along both unit
/// tangent directions and compare against the closed-form right-hand
/// sides built from A(u), B(u) and the h coefficients.
ResidualReport frame_derivative_residual(
    const RotationProfile& profile, const GridSpec& grid,
    const FrameResidualOptions& options = {});

}  // namespace rotsurf
