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

#include <optional>
#include <string>
#include <vector>

#include "rotsurf/families.hpp"
#include "rotsurf/geometry.hpp"

namespace rotsurf {

/// Samples where a formula denominator falls below this magnitude are
/// excluded from the reduction and counted, never interpolated.
inline constexpr double kDenominatorEps = 1e-8;

/// Samples with |H| at or below this floor are excluded from the generic
/// pseudo-umbilical check; if that empties the grid the surface is
/// vacuously pseudo-umbilical.
inline constexpr double kMeanCurvatureFloor = 1e-9;

/// Flatness condition as a normalized residual. Rotation charts evaluate
/// the closed-form polynomial condition on the profile; other charts
/// report |K| directly.
ResidualReport flatness_residual(const Chart& chart, const GridSpec& grid);

/// Minimality condition; closed-form polynomial for rotation charts, |H|
/// otherwise.
ResidualReport minimality_residual(const Chart& chart, const GridSpec& grid);

struct PseudoUmbilicalResidual {
  /// Closed-form polynomial condition; rotation charts only.
  std::optional<ResidualReport> closed_form;
  /// Definition check: <h(e_i,e_j), H> = |H|^2 delta_ij at every sample
  /// with |H| above the floor.
  ResidualReport generic;
  /// True when every sample was excluded because H vanishes; a minimal
  /// surface is pseudo-umbilical by convention.
  bool vacuous = false;
};
PseudoUmbilicalResidual pseudo_umbilical_residual(const Chart& chart,
                                                  const GridSpec& grid);

enum class VranceanuOde { flat, minimal, cft };

struct OdeResidual {
  ResidualReport report;
  /// The constant used by the cft condition: supplied or least-squares
  /// fitted; unset when it could not be determined.
  std::optional<double> constant;
};

/// Characteristic ODE residuals of the Vranceanu profile r(u):
///   flat      r r'' - r'^2
///   minimal   r r'' - 3 r'^2 - 2 r^2
///   cft       r r' (cos^2 u - c sin^2 u) - r^2 cos u sin u (1 + c)
/// all normalized per sample by (1 + sum |term|).
OdeResidual vranceanu_ode_residual(const ExprAst& r_expr, const Interval& u,
                                   VranceanuOde kind, int nu,
                                   std::optional<double> c = {});

struct PointwiseDiagonal {
  std::vector<double> u;       // included sample locations
  std::vector<double> first;   // E4: a11 = a22; E3: a11
  std::vector<double> second;  // E4: a33 = a44; E3: a22 = a33
  std::array<std::string, 2> labels;
  /// max over the two entry families of (max_u - min_u).
  double constancy = 0.0;
  long samples_used = 0;
  long samples_excluded = 0;
};

/// Pointwise eigenvalue candidates a_ii(u) for Delta X = A X, from the
/// closed-form expressions of the respective family.
PointwiseDiagonal pointwise_diagonal(const RotationProfile& profile, int nu);
PointwiseDiagonal pointwise_diagonal(const RevolutionProfile& profile, int nu);

struct DiagonalFit {
  /// Per-coordinate least-squares eigenvalue, unset when the coordinate
  /// carries no mass on the grid.
  std::vector<std::optional<double>> a;
  std::vector<double> coordinate_mass;  // sum of x_i^2 over the grid
  double residual = 0.0;
  long samples_used = 0;
  long samples_excluded = 0;
};

/// Fit Delta x_i = a_i x_i per ambient coordinate over the grid; the
/// residual is the total misfit normalized by the size of Delta X.
DiagonalFit fit_diagonal(const Chart& chart, const GridSpec& grid);

struct RelationFit {
  std::optional<double> constant;
  ResidualReport report;
  std::string form;  // human-readable shape of the fitted relation
};

/// Rotation charts: fit c in f f' = c g g'. Revolution charts: fit lambda
/// in f f' + lambda g g' = 0. Both are necessary conditions for a constant
/// diagonal in Delta X = A X.
RelationFit relation_residual(const RotationProfile& profile, int nu);
RelationFit relation_residual(const RevolutionProfile& profile, int nu);

struct Thresholds {
  double tau = 1e-6;
};

struct VerdictFlag {
  bool yes = false;
  double residual = 0.0;
  std::string note;
};

struct ClassificationVerdict {
  VerdictFlag flat;
  VerdictFlag minimal;
  VerdictFlag pseudo_umbilical;
  VerdictFlag coordinate_finite_type;
  double threshold = 1e-6;
};

/// Aggregate verdict. Coordinate finite type holds when the surface is
/// minimal (A = 0), or when the per-coordinate eigenvalue fit is tight and
/// the closed-form pointwise entries (when a profile is available) are
/// constant across the grid.
ClassificationVerdict classify_surface(const Chart& chart,
                                       const GridSpec& grid,
                                       const Thresholds& thresholds = {});

}  // namespace rotsurf
