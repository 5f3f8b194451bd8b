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

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rotsurf/jet.hpp"
#include "rotsurf/vec.hpp"

namespace rotsurf {

/// Regularity floor on W^2 = EG - F^2; points at or below it are treated
/// as degenerate and excluded from grid reductions.
inline constexpr double kRegularityEps = 1e-12;

struct Domain {
  double u0 = 0, u1 = 1;
  double v0 = 0, v1 = 1;

  bool contains(double u, double v) const {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
  }
};

struct GridSpec {
  int nu = 64;
  int nv = 64;
};

/// Cell-centered sample location: half a step in from the interval ends,
/// which dodges endpoint degeneracies like sin u = 0.
inline double grid_point(double lo, double hi, int n, int i) {
  return lo + (hi - lo) * (i + 0.5) / n;
}

/// Per-coordinate jets of a chart at one parameter point.
struct ChartJets {
  int n = 0;
  std::array<Jet2, 4> coord{};

  Vec position() const;
  Vec xu() const;
  Vec xv() const;
  Vec xuu() const;
  Vec xuv() const;
  Vec xvv() const;
};

struct RotationProfile;    // families.hpp
struct RevolutionProfile;  // families.hpp

/// A parametric surface patch in E^3 or E^4. All geometry derives from the
/// jet evaluator; the optional profile handles give classification its
/// closed-form path. Immutable after construction.
struct Chart {
  int ambient_dim = 3;
  Domain domain;
  std::string family = "explicit";
  /// Parameter record in construction order: expressions and constants
  /// as the factory received them.
  std::vector<std::pair<std::string, std::string>> params;
  std::function<ChartJets(double, double)> eval;
  std::shared_ptr<const RotationProfile> rotation;
  std::shared_ptr<const RevolutionProfile> revolution;
};

/// Evaluate the chart, checking the domain rectangle first.
ChartJets eval_chart(const Chart& chart, double u, double v);

struct FirstFundamentalForm {
  double E = 0, F = 0, G = 0;
  double W2 = 0;  // EG - F^2
  double E_u = 0, E_v = 0, F_u = 0, F_v = 0, G_u = 0, G_v = 0;
};

/// Metric coefficients and their first derivatives, all assembled
/// analytically from the chart's second-order jets. Throws
/// DegeneratePointError when W^2 <= kRegularityEps.
FirstFundamentalForm first_form(const ChartJets& jets);

struct OrthoFrames {
  Vec e1, e2;                  // orthonormal tangents, e1 along X_u
  std::array<Vec, 2> normal{};  // orthonormal normals, n-2 of them
  int normal_count = 0;
  // Change of basis {X_u, X_v} -> {e1, e2}: e1 = b11 X_u,
  // e2 = b21 X_u + b22 X_v.
  double b11 = 0, b21 = 0, b22 = 0;
};

/// Tangent frame by normalization + Gram-Schmidt; normal frame by
/// projecting the ambient standard basis onto the normal space and keeping
/// the largest residuals (pivoting). Sign rule: the first component of
/// each normal larger than 1e-9 in magnitude is made positive.
OrthoFrames frames(const ChartJets& jets, const FirstFundamentalForm& form);

struct SecondFundamentalForm {
  int normal_count = 0;
  // h[k][i][j] in the orthonormal tangent frame; symmetric in (i, j).
  std::array<std::array<std::array<double, 2>, 2>, 2> h{};
};

SecondFundamentalForm second_form(const ChartJets& jets,
                                  const OrthoFrames& fr);

using Mat2 = std::array<std::array<double, 2>, 2>;

/// The 2x2 matrix of the shape operator for one normal direction.
Mat2 shape_operator(const SecondFundamentalForm& sff, int normal_index);

/// K as the sum over normals of det h^k.
double gaussian_curvature(const SecondFundamentalForm& sff);

/// Half the trace of the second fundamental form, as an ambient vector.
Vec mean_curvature_vector(const SecondFundamentalForm& sff,
                          const OrthoFrames& fr);

struct CurvatureReport {
  double K = 0;
  Vec H_vec;
  double H_norm = 0;
};

/// Convenience: forms, frames and curvatures in one call.
CurvatureReport curvature_report(const ChartJets& jets);

/// Laplace-Beltrami image of the coordinate functions with the sign
/// convention Delta = -div grad, so minimal surfaces have Delta x = 0 and
/// sphere eigenvalues are positive. Expanded analytically through the
/// metric derivatives; needs nothing beyond second-order jets.
Vec laplace_beltrami_coords(const ChartJets& jets,
                            const FirstFundamentalForm& form);

struct ResidualReport {
  double max_abs = 0.0;
  double rms = 0.0;
  long samples_used = 0;
  long samples_excluded = 0;
  std::string normalization;
};

/// Max and rms over the grid of |Delta x + 2 H| / (1 + |Delta x|); the
/// identity Delta x = -2H holds for every immersion, so this is a global
/// consistency check between the two computation routes.
ResidualReport beltrami_check(const Chart& chart, const GridSpec& grid);

}  // namespace rotsurf
