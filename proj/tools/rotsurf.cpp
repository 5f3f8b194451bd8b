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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotsurf/config.hpp"
#include "rotsurf/mesh.hpp"
#include "rotsurf/report.hpp"

namespace {

using namespace rotsurf;

// Exit codes: 0 success / all checks yes, 1 a requested check said no,
// 2 input or construction error, 3 internal numerical failure.
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

GridSpec parse_grid_flag(const std::string& text) {
  int nu = 0, nv = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &nu, &nv, &extra) != 2 || nu < 8 ||
      nv < 8)
    throw ConfigError("invalid --grid '" + text +
                      "' (expected NUxNV with both at least 8)");
  return GridSpec{nu, nv};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write to '" + path + "'");
  out << content;
}

SurfaceConfig load_with_overrides(const std::string& config_path,
                                  const std::string& grid_flag,
                                  std::optional<double> tol_flag) {
  SurfaceConfig cfg = load_config(config_path);
  if (!grid_flag.empty()) cfg.grid = parse_grid_flag(grid_flag);
  if (tol_flag) {
    if (!(*tol_flag > 0)) throw ConfigError("--tol must be positive");
    cfg.thresholds.tau = *tol_flag;
  }
  return cfg;
}

int cmd_report(const std::string& config_path, const std::string& out_path,
               const std::string& csv_path, const std::string& grid_flag,
               std::optional<double> tol_flag) {
  const SurfaceConfig cfg =
      load_with_overrides(config_path, grid_flag, tol_flag);
  const Chart chart = build_chart(cfg);
  const ReportDocument doc = build_report(chart, cfg);
  write_output(out_path, report_to_json(doc));
  if (!csv_path.empty()) write_output(csv_path, grid_csv(chart, cfg.grid));
  return 0;
}

int cmd_check(const std::string& config_path, const std::string& which,
              const std::string& grid_flag, std::optional<double> tol_flag) {
  const SurfaceConfig cfg =
      load_with_overrides(config_path, grid_flag, tol_flag);
  const Chart chart = build_chart(cfg);
  const ClassificationVerdict verdict =
      classify_surface(chart, cfg.grid, cfg.thresholds);

  std::vector<std::string> names;
  std::string token;
  for (char ch : which + ",") {
    if (ch == ',') {
      if (!token.empty()) names.push_back(token);
      token.clear();
    } else {
      token += ch;
    }
  }
  if (names.empty()) throw ConfigError("--for needs at least one flag");

  bool all_yes = true;
  for (const std::string& name : names) {
    const VerdictFlag* flag = nullptr;
    if (name == "flat")
      flag = &verdict.flat;
    else if (name == "minimal")
      flag = &verdict.minimal;
    else if (name == "pseudo_umbilical")
      flag = &verdict.pseudo_umbilical;
    else if (name == "cft")
      flag = &verdict.coordinate_finite_type;
    else
      throw ConfigError("unknown check '" + name +
                        "' (expected flat, minimal, pseudo_umbilical, cft)");
    char line[128];
    std::snprintf(line, sizeof(line), "%s: %s (residual %.6g)\n", name.c_str(),
                  flag->yes ? "yes" : "no", flag->residual);
    std::cout << line;
    all_yes = all_yes && flag->yes;
  }
  return all_yes ? 0 : kExitCheckFailed;
}

int cmd_mesh(const std::string& config_path, const std::string& project_flag,
             const std::string& out_path, const std::string& grid_flag) {
  const SurfaceConfig cfg = load_with_overrides(config_path, grid_flag, {});
  const Chart chart = build_chart(cfg);
  Projection projection;  // E^3 charts default to no projection
  if (!project_flag.empty())
    projection = parse_projection(project_flag, chart.ambient_dim);
  write_output(out_path, mesh_obj(chart, cfg.grid, projection));
  return 0;
}

int cmd_presets() {
  for (const PresetInfo& p : preset_catalog()) {
    std::string args;
    for (const auto& [key, value] : p.defaults) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s%s=%.6g", args.empty() ? "" : ", ",
                    key.c_str(), value);
      args += buf;
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%-18s (%s)  u in [%.6g, %.6g]  %s\n",
                  p.name.c_str(), args.empty() ? "no parameters" : args.c_str(),
                  p.default_u.lo, p.default_u.hi, p.summary.c_str());
    std::cout << line;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rotsurf: curvature, Laplacian eigenvalue fits and classification for "
      "rotational surface charts in 3- and 4-space"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, grid_flag, which, project_flag;
  std::optional<double> tol_flag;

  CLI::App* rep = app.add_subcommand("report", "full machine-readable report");
  rep->add_option("config", config_path, "JSON surface config")->required();
  rep->add_option("--out", out_path, "write the JSON report here");
  rep->add_option("--csv", csv_path, "also dump the sample grid as CSV");
  rep->add_option("--grid", grid_flag, "override the grid, e.g. 64x64");
  rep->add_option("--tol", tol_flag, "override the verdict threshold");

  CLI::App* chk = app.add_subcommand("check", "evaluate selected flags");
  chk->add_option("config", config_path, "JSON surface config")->required();
  chk->add_option("--for", which,
                  "comma list of flat, minimal, pseudo_umbilical, cft")
      ->required();
  chk->add_option("--grid", grid_flag, "override the grid, e.g. 64x64");
  chk->add_option("--tol", tol_flag, "override the verdict threshold");

  CLI::App* msh = app.add_subcommand("mesh", "export a Wavefront OBJ mesh");
  msh->add_option("config", config_path, "JSON surface config")->required();
  msh->add_option("--project", project_flag,
                  "drop:<index> or stereographic:+/- (4-coordinate charts)");
  msh->add_option("--out", out_path, "output OBJ path")->required();
  msh->add_option("--grid", grid_flag, "override the grid, e.g. 64x64");

  CLI::App* pre =
      app.add_subcommand("presets", "list preset names and parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (rep->parsed())
      return cmd_report(config_path, out_path, csv_path, grid_flag, tol_flag);
    if (chk->parsed())
      return cmd_check(config_path, which, grid_flag, tol_flag);
    if (msh->parsed())
      return cmd_mesh(config_path, project_flag, out_path, grid_flag);
    if (pre->parsed()) return cmd_presets();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const OutOfDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UndeterminedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitInputError;
}
