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

#include "rotsurf/classify.hpp"
#include "rotsurf/config.hpp"

namespace rotsurf {

inline constexpr const char* kVersion = "0.1.0";

struct GridStats {
  double min = 0, max = 0, rms = 0;
};

/// Everything `rotsurf report` knows about one surface. Serialization is
/// deterministic: keys are emitted in a fixed order and every float is
/// printed with 17 significant digits.
struct ReportDocument {
  SurfaceConfig config;
  Domain domain;  // resolved, after preset defaults
  int ambient_dim = 3;

  GridStats K;
  GridStats H_norm;
  long stats_used = 0;
  long stats_excluded = 0;

  ResidualReport beltrami;
  ResidualReport flatness;
  ResidualReport minimality;
  PseudoUmbilicalResidual pseudo_umbilical;

  std::optional<OdeResidual> ode_flat, ode_minimal, ode_cft;
  std::optional<RelationFit> relation;
  std::optional<PointwiseDiagonal> pointwise;

  DiagonalFit fit;
  ClassificationVerdict verdict;
};

ReportDocument build_report(const Chart& chart, const SurfaceConfig& config);

/// Render as JSON text (sorted keys, %.17g floats, trailing newline).
/// Raises NumericalError if any value to be written is not finite.
std::string report_to_json(const ReportDocument& doc);

/// CSV dump of the grid: u, v, x1..xn, K, Hnorm; excluded samples are
/// skipped.
std::string grid_csv(const Chart& chart, const GridSpec& grid);

}  // namespace rotsurf
