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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rotsurf/classify.hpp"
#include "support.hpp"

using namespace rotsurf;

namespace {

constexpr double kPi = std::numbers::pi;
const GridSpec kGrid{32, 32};

Chart vranceanu_from(const std::string& r, Interval u) {
  VranceanuParams p{parse_or_throw(r, VarSet::u_only()), u};
  return make_chart(p);
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("flatness residual") {
    CHECK(flatness_residual(make_preset("flat_vranceanu", {{"mu", 0.3}}),
                            kGrid)
              .max_abs < 1e-8);
    CHECK(flatness_residual(make_preset("clifford", {}), kGrid).max_abs <
          1e-10);
    // A bumpy radius is visibly non-flat.
    const ResidualReport bumpy = flatness_residual(
        vranceanu_from("1 + 0.2*sin(u)", {0.0, 2.0 * kPi}), kGrid);
    CHECK(bumpy.max_abs > 1e-3);
    CHECK(bumpy.max_abs >= bumpy.rms);
    CHECK(bumpy.rms >= 0.0);
    CHECK(bumpy.samples_used + bumpy.samples_excluded == kGrid.nu);
  }

  TEST_CASE("minimality residual") {
    CHECK(minimality_residual(make_preset("minimal_vranceanu", {}), kGrid)
              .max_abs < 1e-8);
    CHECK(minimality_residual(make_preset("catenoid", {}), kGrid).max_abs <
          1e-10);
    // The closed-form condition is clearly violated on the torus.
    CHECK(minimality_residual(make_preset("clifford", {}), kGrid).max_abs >
          0.1);
  }

  TEST_CASE("pseudo-umbilical residuals") {
    const auto flat = pseudo_umbilical_residual(
        make_preset("flat_vranceanu", {{"mu", 0.3}}), kGrid);
    REQUIRE(flat.closed_form.has_value());
    CHECK(flat.closed_form->max_abs < 1e-8);
    CHECK(flat.generic.max_abs < 1e-8);
    CHECK_FALSE(flat.vacuous);

    const auto sphere =
        pseudo_umbilical_residual(make_preset("sphere", {}), kGrid);
    CHECK_FALSE(sphere.closed_form.has_value());  // not a rotation chart
    CHECK(sphere.generic.max_abs < 1e-10);

    const auto clifford =
        pseudo_umbilical_residual(make_preset("clifford", {}), kGrid);
    CHECK(clifford.generic.max_abs < 1e-10);

    // Minimal surface: every sample excluded, vacuously pseudo-umbilical.
    const auto catenoid =
        pseudo_umbilical_residual(make_preset("catenoid", {}), kGrid);
    CHECK(catenoid.vacuous);
    CHECK(catenoid.generic.samples_used == 0);

    // The cone has H != 0 and unequal principal curvatures.
    const auto cone = pseudo_umbilical_residual(make_preset("cone", {}), kGrid);
    CHECK(cone.generic.max_abs > 1e-3);
  }

  TEST_CASE("vranceanu characteristic ODEs") {
    const ExprAst flat_r = parse_or_throw("exp(0.3*u)", VarSet::u_only());
    CHECK(vranceanu_ode_residual(flat_r, {0.0, 2.0 * kPi},
                                 VranceanuOde::flat, 32)
              .report.max_abs < 1e-12);

    const ExprAst minimal_r =
        parse_or_throw("1/sqrt(sin(2*u))", VarSet::u_only());
    CHECK(vranceanu_ode_residual(minimal_r, {0.1, kPi / 2 - 0.1},
                                 VranceanuOde::minimal, 32)
              .report.max_abs < 1e-8);

    // r = sec u solves the eigencoordinate ODE with c = 0 (both sides are
    // tan u); the fitted constant lands on 0 as well.
    const ExprAst sec_r = parse_or_throw(
        "1.4142135623730951/sqrt(cos(2*u) + 1)", VarSet::u_only());
    const OdeResidual supplied = vranceanu_ode_residual(
        sec_r, {0.1, 1.2}, VranceanuOde::cft, 32, 0.0);
    CHECK(supplied.report.max_abs < 1e-10);
    const OdeResidual fitted =
        vranceanu_ode_residual(sec_r, {0.1, 1.2}, VranceanuOde::cft, 32);
    REQUIRE(fitted.constant.has_value());
    CHECK(std::fabs(*fitted.constant) < 1e-12);
    CHECK(fitted.report.max_abs < 1e-10);

    // The flat exponential family fails the minimal ODE and vice versa.
    CHECK(vranceanu_ode_residual(flat_r, {0.0, 2.0 * kPi},
                                 VranceanuOde::minimal, 32)
              .report.max_abs > 1e-2);
  }

  TEST_CASE("pointwise diagonal entries") {
    const Chart sphere = make_preset("sphere", {{"r", 1.0}});
    const PointwiseDiagonal sp = pointwise_diagonal(*sphere.revolution, 32);
    CHECK(sp.labels[0] == "a11");
    for (double a : sp.first) CHECK(a == doctest::Approx(2.0).epsilon(1e-12));
    for (double a : sp.second) CHECK(a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sp.constancy < 1e-10);

    const Chart clifford = make_preset("clifford", {});
    const PointwiseDiagonal cp = pointwise_diagonal(*clifford.rotation, 32);
    CHECK(cp.labels[0] == "a11=a22");
    for (double a : cp.first) CHECK(a == doctest::Approx(2.0).epsilon(1e-12));
    for (double a : cp.second) CHECK(a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cp.constancy < 1e-10);

    // r = e^u: the entries drift with u.
    const Chart drift = make_preset("flat_vranceanu", {{"mu", 1.0}});
    CHECK(pointwise_diagonal(*drift.rotation, 32).constancy > 0.1);

    // Denominator exclusion: an odd grid over a domain symmetric about
    // pi/2 lands one sample exactly where f = r cos u vanishes.
    const Chart hemisphere =
        make_preset("sphere", {{"r", 1.0}}, Interval{0.1, kPi - 0.1});
    const PointwiseDiagonal hp = pointwise_diagonal(*hemisphere.revolution, 31);
    CHECK(hp.samples_excluded == 1);
    CHECK(hp.samples_used == 30);
  }

  TEST_CASE("diagonal fit") {
    const DiagonalFit clifford =
        fit_diagonal(make_preset("clifford", {}), kGrid);
    REQUIRE(clifford.a.size() == 4);
    for (const auto& a : clifford.a) {
      REQUIRE(a.has_value());
      CHECK(*a == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(clifford.residual < 1e-9);

    const DiagonalFit sphere2 =
        fit_diagonal(make_preset("sphere", {{"r", 2.0}}), kGrid);
    for (const auto& a : sphere2.a) {
      REQUIRE(a.has_value());
      CHECK(*a == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(sphere2.residual < 1e-9);

    // Catenoid: Delta X vanishes, the fitted eigenvalues are all near 0
    // and the verdict comes from the minimality flag instead.
    const DiagonalFit catenoid =
        fit_diagonal(make_preset("catenoid", {}), kGrid);
    for (const auto& a : catenoid.a) {
      REQUIRE(a.has_value());
      CHECK(std::fabs(*a) < 1e-6);
    }

    // Cylinder: constant entries (0, 1, 1), finite type without being
    // minimal or round.
    RevolutionParams cyl{parse_or_throw("u", VarSet::u_only()),
                         parse_or_throw("1", VarSet::u_only()),
                         Interval{0.5, 2.0}};
    const Chart cylinder = make_chart(cyl);
    const DiagonalFit cf = fit_diagonal(cylinder, kGrid);
    CHECK(std::fabs(*cf.a[0]) < 1e-12);
    CHECK(*cf.a[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*cf.a[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cf.residual < 1e-9);
    CHECK(classify_surface(cylinder, kGrid).coordinate_finite_type.yes);

    // A coordinate that never leaves zero is undetermined.
    const Chart plane = make_expression_chart(
        {parse_or_throw("u", VarSet::uv()), parse_or_throw("v", VarSet::uv()),
         parse_or_throw("0*u", VarSet::uv())},
        Domain{-1, 1, -1, 1}, "plane");
    const DiagonalFit pf = fit_diagonal(plane, kGrid);
    CHECK(pf.a[0].has_value());
    CHECK(pf.a[1].has_value());
    CHECK_FALSE(pf.a[2].has_value());
    CHECK(pf.coordinate_mass[2] < 1e-20);
  }

  TEST_CASE("fit consistency with constant pointwise entries") {
    for (const char* name : {"clifford", "sphere"}) {
      const Chart chart = make_preset(name, {});
      const PointwiseDiagonal pw =
          chart.rotation ? pointwise_diagonal(*chart.rotation, kGrid.nu)
                         : pointwise_diagonal(*chart.revolution, kGrid.nu);
      REQUIRE(pw.constancy < 1e-8);
      const DiagonalFit fit = fit_diagonal(chart, kGrid);
      CHECK(fit.residual < 1e-6);
      // The fitted eigenvalues match the constant pointwise entries.
      CHECK(std::fabs(*fit.a[0] - pw.first.front()) < 1e-6);
      CHECK(std::fabs(*fit.a.back() - pw.second.front()) < 1e-6);
    }
  }

  TEST_CASE("fit is scale equivariant on the sphere family") {
    const DiagonalFit one = fit_diagonal(make_preset("sphere", {{"r", 1.0}}),
                                         kGrid);
    const DiagonalFit two = fit_diagonal(make_preset("sphere", {{"r", 2.0}}),
                                         kGrid);
    const DiagonalFit half =
        fit_diagonal(make_preset("sphere", {{"r", 0.5}}), kGrid);
    CHECK(*two.a[0] == doctest::Approx(*one.a[0] / 4.0).epsilon(1e-8));
    CHECK(*half.a[0] == doctest::Approx(*one.a[0] * 4.0).epsilon(1e-8));
  }

  TEST_CASE("relation fits") {
    const RelationFit sphere =
        relation_residual(*make_preset("sphere", {}).revolution, 32);
    REQUIRE(sphere.constant.has_value());
    CHECK(*sphere.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sphere.report.max_abs < 1e-12);

    const RelationFit cone =
        relation_residual(*make_preset("cone", {}).revolution, 32);
    REQUIRE(cone.constant.has_value());
    CHECK(*cone.constant == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(cone.report.max_abs < 1e-12);

    const RelationFit catenoid =
        relation_residual(*make_preset("catenoid", {}).revolution, 32);
    CHECK(catenoid.report.max_abs > 1e-2);

    // Cylinder: g g' vanishes identically, so the constant is
    // undetermined and the residual reports f f' alone.
    RevolutionParams cyl{parse_or_throw("u", VarSet::u_only()),
                         parse_or_throw("1", VarSet::u_only()),
                         Interval{0.5, 2.0}};
    const Chart cylinder = make_chart(cyl);
    const RelationFit cyl_fit = relation_residual(*cylinder.revolution, 32);
    CHECK_FALSE(cyl_fit.constant.has_value());
    CHECK(cyl_fit.report.max_abs > 0.1);

    // Rotation form f f' = c g g' on the torus: both sides are equal and
    // opposite, so c = -1 fits exactly.
    const RelationFit clifford =
        relation_residual(*make_preset("clifford", {}).rotation, 32);
    REQUIRE(clifford.constant.has_value());
    CHECK(*clifford.constant == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(clifford.report.max_abs < 1e-12);
  }

  TEST_CASE("verdicts") {
    const ClassificationVerdict clifford =
        classify_surface(make_preset("clifford", {}), kGrid);
    CHECK(clifford.flat.yes);
    CHECK_FALSE(clifford.minimal.yes);
    CHECK(clifford.pseudo_umbilical.yes);
    CHECK(clifford.coordinate_finite_type.yes);

    const ClassificationVerdict drifting =
        classify_surface(make_preset("flat_vranceanu", {{"mu", 1.0}}), kGrid);
    CHECK(drifting.flat.yes);
    CHECK_FALSE(drifting.coordinate_finite_type.yes);

    const ClassificationVerdict catenoid =
        classify_surface(make_preset("catenoid", {}), kGrid);
    CHECK_FALSE(catenoid.flat.yes);
    CHECK(catenoid.minimal.yes);
    CHECK(catenoid.pseudo_umbilical.yes);
    CHECK(catenoid.coordinate_finite_type.yes);

    const ClassificationVerdict sphere =
        classify_surface(make_preset("sphere", {{"r", 2.0}}), kGrid);
    CHECK_FALSE(sphere.flat.yes);
    CHECK_FALSE(sphere.minimal.yes);
    CHECK(sphere.pseudo_umbilical.yes);
    CHECK(sphere.coordinate_finite_type.yes);
  }

  TEST_CASE("verdicts are stable under grid refinement") {
    const char* names[] = {"clifford",        "sphere",  "cone",
                           "catenoid",        "flat_vranceanu",
                           "minimal_vranceanu", "cft_vranceanu"};
    for (const char* name : names) {
      const Chart chart = make_preset(name, {});
      const ClassificationVerdict coarse =
          classify_surface(chart, GridSpec{32, 32});
      const ClassificationVerdict fine =
          classify_surface(chart, GridSpec{64, 64});
      CAPTURE(name);
      CHECK(coarse.flat.yes == fine.flat.yes);
      CHECK(coarse.minimal.yes == fine.minimal.yes);
      CHECK(coarse.pseudo_umbilical.yes == fine.pseudo_umbilical.yes);
      CHECK(coarse.coordinate_finite_type.yes ==
            fine.coordinate_finite_type.yes);
    }
  }

  TEST_CASE("minimal implies pseudo-umbilical and finite type") {
    for (const char* name : {"catenoid", "minimal_vranceanu"}) {
      const ClassificationVerdict v =
          classify_surface(make_preset(name, {}), kGrid);
      REQUIRE(v.minimal.yes);
      CHECK(v.pseudo_umbilical.yes);
      CHECK(v.coordinate_finite_type.yes);
    }
  }
}
