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

#include <string>

#include "rotsurf/geometry.hpp"

namespace rotsurf {

/// How to map a 4-coordinate chart into 3-space for export. E^3 charts
/// export as-is.
struct Projection {
  enum class Kind { none, drop, stereographic };
  Kind kind = Kind::none;
  int drop_index = 0;  // 0-based ambient coordinate to remove
  int pole_sign = +1;  // stereographic pole at (0,0,0, sign * R)
};

/// Parse "drop:i" or "stereographic:+" / "stereographic:-".
Projection parse_projection(const std::string& text, int ambient_dim);

/// Wavefront OBJ text: nu x nv vertices in row-major order (u outer),
/// quads split into two counterclockwise triangles. Either direction is
/// stitched closed when the chart provably wraps around it (the boundary
/// positions coincide), so full-period charts export as closed meshes.
std::string mesh_obj(const Chart& chart, const GridSpec& grid,
                     const Projection& projection);

}  // namespace rotsurf
