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

#include <map>
#include <optional>
#include <string>

#include "rotsurf/classify.hpp"
#include "rotsurf/families.hpp"

namespace rotsurf {

/// Validated user-facing description of a surface. The JSON schema is
/// strict: unknown keys anywhere are errors.
struct SurfaceConfig {
  enum class Kind { generalized_rotation, revolution, vranceanu, preset };

  Kind kind = Kind::preset;

  // kind == preset
  std::string preset_name;
  std::map<std::string, double> preset_args;

  // expression kinds
  std::string f_expr, g_expr;  // generalized_rotation, revolution
  std::string r_expr;          // vranceanu
  double c = 1.0, d = 1.0;     // generalized_rotation

  std::optional<Interval> u_domain;
  std::optional<Interval> v_domain;
  GridSpec grid{64, 64};
  Thresholds thresholds;
};

const char* kind_name(SurfaceConfig::Kind kind);

/// Parse and validate a config from JSON text; all diagnostics are raised
/// as ConfigError with enough context to locate the problem, including
/// byte offsets for expression parse errors.
SurfaceConfig parse_config_json(const std::string& text);

/// Read the file, then parse_config_json.
SurfaceConfig load_config(const std::string& path);

/// Build the chart a config describes; construction errors propagate.
Chart build_chart(const SurfaceConfig& config);

}  // namespace rotsurf
