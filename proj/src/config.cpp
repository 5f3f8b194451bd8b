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

#include "rotsurf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      std::string list;
      for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("unknown key '" + key + "' in " + where +
                        " (allowed: " + list + ")");
    }
  }
}

double require_number(const json& obj, const std::string& where,
                      const std::string& key) {
  if (!obj.contains(key))
    throw ConfigError("missing key '" + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("key '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& where,
                           const std::string& key) {
  if (!obj.contains(key))
    throw ConfigError("missing key '" + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_string())
    throw ConfigError("key '" + key + "' in " + where + " must be a string");
  return v.get<std::string>();
}

Interval parse_interval(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number())
    throw ConfigError(where + " must be an array of two numbers");
  Interval iv{v[0].get<double>(), v[1].get<double>()};
  if (!(iv.lo < iv.hi))
    throw ConfigError(where + " must be a nondegenerate interval");
  return iv;
}

// Parse an expression-valued param, turning parse errors into diagnostics
// that carry the byte offset.
void check_expression(const std::string& text, VarSet vars,
                      const std::string& where) {
  auto result = parse(text, vars);
  if (auto* err = std::get_if<ParseError>(&result))
    throw ConfigError("invalid expression in " + where + ": " +
                      err->message());
}

}  // namespace

const char* kind_name(SurfaceConfig::Kind kind) {
  switch (kind) {
    case SurfaceConfig::Kind::generalized_rotation:
      return "generalized_rotation";
    case SurfaceConfig::Kind::revolution:
      return "revolution";
    case SurfaceConfig::Kind::vranceanu:
      return "vranceanu";
    case SurfaceConfig::Kind::preset:
      return "preset";
  }
  return "?";
}

SurfaceConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  require_keys(root, "config", {"kind", "params", "domain", "grid",
                                "thresholds"});

  SurfaceConfig cfg;
  const std::string kind = require_string(root, "config", "kind");
  if (kind == "generalized_rotation")
    cfg.kind = SurfaceConfig::Kind::generalized_rotation;
  else if (kind == "revolution")
    cfg.kind = SurfaceConfig::Kind::revolution;
  else if (kind == "vranceanu")
    cfg.kind = SurfaceConfig::Kind::vranceanu;
  else if (kind == "preset")
    cfg.kind = SurfaceConfig::Kind::preset;
  else
    throw ConfigError("unknown kind '" + kind +
                      "' (expected generalized_rotation, revolution, "
                      "vranceanu, or preset)");

  if (!root.contains("params") || !root.at("params").is_object())
    throw ConfigError("config needs a 'params' object");
  const json& params = root.at("params");

  switch (cfg.kind) {
    case SurfaceConfig::Kind::preset: {
      cfg.preset_name = require_string(params, "params", "name");
      for (const auto& [key, value] : params.items()) {
        if (key == "name") continue;
        if (!value.is_number())
          throw ConfigError("preset parameter '" + key +
                            "' must be a number");
        cfg.preset_args[key] = value.get<double>();
      }
      break;
    }
    case SurfaceConfig::Kind::vranceanu: {
      require_keys(params, "params", {"r"});
      cfg.r_expr = require_string(params, "params", "r");
      check_expression(cfg.r_expr, VarSet::u_only(), "params.r");
      break;
    }
    case SurfaceConfig::Kind::revolution: {
      require_keys(params, "params", {"f", "g"});
      cfg.f_expr = require_string(params, "params", "f");
      cfg.g_expr = require_string(params, "params", "g");
      check_expression(cfg.f_expr, VarSet::u_only(), "params.f");
      check_expression(cfg.g_expr, VarSet::u_only(), "params.g");
      break;
    }
    case SurfaceConfig::Kind::generalized_rotation: {
      require_keys(params, "params", {"f", "g", "c", "d"});
      cfg.f_expr = require_string(params, "params", "f");
      cfg.g_expr = require_string(params, "params", "g");
      cfg.c = require_number(params, "params", "c");
      cfg.d = require_number(params, "params", "d");
      check_expression(cfg.f_expr, VarSet::u_only(), "params.f");
      check_expression(cfg.g_expr, VarSet::u_only(), "params.g");
      break;
    }
  }

  if (root.contains("domain")) {
    const json& dom = root.at("domain");
    if (!dom.is_object()) throw ConfigError("'domain' must be an object");
    require_keys(dom, "domain", {"u", "v"});
    if (dom.contains("u")) cfg.u_domain = parse_interval(dom.at("u"), "domain.u");
    if (dom.contains("v")) cfg.v_domain = parse_interval(dom.at("v"), "domain.v");
  }
  if (cfg.kind != SurfaceConfig::Kind::preset && !cfg.u_domain)
    throw ConfigError("non-preset configs need domain.u");

  if (root.contains("grid")) {
    const json& grid = root.at("grid");
    if (!grid.is_array() || grid.size() != 2 ||
        !grid[0].is_number_integer() || !grid[1].is_number_integer())
      throw ConfigError("'grid' must be an array of two integers");
    cfg.grid.nu = grid[0].get<int>();
    cfg.grid.nv = grid[1].get<int>();
    if (cfg.grid.nu < 8 || cfg.grid.nv < 8)
      throw ConfigError("grid must be at least 8x8");
  }

  if (root.contains("thresholds")) {
    const json& th = root.at("thresholds");
    if (!th.is_object()) throw ConfigError("'thresholds' must be an object");
    require_keys(th, "thresholds", {"tau"});
    if (th.contains("tau")) {
      cfg.thresholds.tau = require_number(th, "thresholds", "tau");
      if (!(cfg.thresholds.tau > 0))
        throw ConfigError("thresholds.tau must be positive");
    }
  }
  return cfg;
}

SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

Chart build_chart(const SurfaceConfig& cfg) {
  switch (cfg.kind) {
    case SurfaceConfig::Kind::preset:
      return make_preset(cfg.preset_name, cfg.preset_args, cfg.u_domain,
                         cfg.v_domain);
    case SurfaceConfig::Kind::vranceanu: {
      VranceanuParams p{parse_or_throw(cfg.r_expr, VarSet::u_only()),
                        *cfg.u_domain};
      Chart chart = make_chart(p);
      if (cfg.v_domain)
        chart.domain.v0 = cfg.v_domain->lo, chart.domain.v1 = cfg.v_domain->hi;
      return chart;
    }
    case SurfaceConfig::Kind::revolution: {
      RevolutionParams p{parse_or_throw(cfg.f_expr, VarSet::u_only()),
                         parse_or_throw(cfg.g_expr, VarSet::u_only()),
                         *cfg.u_domain};
      Chart chart = make_chart(p);
      if (cfg.v_domain)
        chart.domain.v0 = cfg.v_domain->lo, chart.domain.v1 = cfg.v_domain->hi;
      return chart;
    }
    case SurfaceConfig::Kind::generalized_rotation: {
      GeneralizedRotationParams p{
          cfg.c, cfg.d, parse_or_throw(cfg.f_expr, VarSet::u_only()),
          parse_or_throw(cfg.g_expr, VarSet::u_only()), *cfg.u_domain};
      Chart chart = make_chart(p);
      if (cfg.v_domain)
        chart.domain.v0 = cfg.v_domain->lo, chart.domain.v1 = cfg.v_domain->hi;
      return chart;
    }
  }
  throw ConfigError("corrupt config");
}

}  // namespace rotsurf
