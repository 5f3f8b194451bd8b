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
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rotsurf/config.hpp"
#include "rotsurf/mesh.hpp"
#include "rotsurf/report.hpp"

using namespace rotsurf;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Run the installed binary, capturing stdout; stderr goes to our stderr.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ROTSURF_BIN) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "cli_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

int count_prefix(const std::string& text, const std::string& prefix) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(prefix, pos)) != std::string::npos) {
    if (pos == 0 || text[pos - 1] == '\n') ++n;
    pos += prefix.size();
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config loading") {
    SUBCASE("valid configs") {
      CHECK(parse_config_json(
                R"json({"kind":"preset","params":{"name":"clifford","r":1}})json")
                .preset_name == "clifford");
      const SurfaceConfig v = parse_config_json(
          R"json({"kind":"vranceanu","params":{"r":"exp(0.3*u)"},"domain":{"u":[0,2]}})json");
      CHECK(v.r_expr == "exp(0.3*u)");
      REQUIRE(v.u_domain.has_value());
      CHECK(v.u_domain->lo == 0.0);
      CHECK(v.u_domain->hi == 2.0);
      CHECK(v.grid.nu == 64);  // default

      const SurfaceConfig g = parse_config_json(
          R"json({"kind":"generalized_rotation",
              "params":{"f":"cos(u)","g":"sin(u)","c":1,"d":1},
              "domain":{"u":[0,6.28]},"grid":[16,24],
              "thresholds":{"tau":1e-5}})json");
      CHECK(g.c == 1.0);
      CHECK(g.grid.nv == 24);
      CHECK(g.thresholds.tau == 1e-5);
    }

    SUBCASE("expression errors carry offsets") {
      try {
        parse_config_json(
            R"json({"kind":"vranceanu","params":{"r":"exp(0.3*w)"},"domain":{"u":[0,2]}})json");
        FAIL("expected a config error");
      } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("offset 8") != std::string::npos);
        CHECK(msg.find("'w'") != std::string::npos);
      }
    }

    SUBCASE("schema violations") {
      CHECK_THROWS_AS(parse_config_json("not json"), ConfigError);
      CHECK_THROWS_AS(parse_config_json(R"json({"kind":"torus","params":{}})json"),
                      ConfigError);
      CHECK_THROWS_AS(
          parse_config_json(
              R"json({"kind":"preset","params":{"name":"clifford"},"extra":1})json"),
          ConfigError);
      CHECK_THROWS_AS(
          parse_config_json(
              R"json({"kind":"vranceanu","params":{"r":"u"},"domain":{"u":[0,1]},"grid":[4,4]})json"),
          ConfigError);
      CHECK_THROWS_AS(
          parse_config_json(
              R"json({"kind":"vranceanu","params":{"r":"u"},"domain":{"u":[1,1]}})json"),
          ConfigError);
      // Non-preset kinds need an explicit u-domain.
      CHECK_THROWS_AS(
          parse_config_json(R"json({"kind":"vranceanu","params":{"r":"u+1"}})json"),
          ConfigError);
      CHECK_THROWS_AS(load_config("does_not_exist.json"), ConfigError);
    }
  }

  TEST_CASE("report document") {
    const SurfaceConfig cfg = parse_config_json(
        R"json({"kind":"preset","params":{"name":"clifford","r":1},"grid":[32,32]})json");
    const Chart chart = build_chart(cfg);
    const ReportDocument doc = build_report(chart, cfg);
    CHECK(doc.K.rms < 1e-10);
    CHECK(doc.H_norm.rms == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& a : doc.fit.a) {
      REQUIRE(a.has_value());
      CHECK(*a == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(doc.verdict.coordinate_finite_type.yes);

    // Serialization is deterministic in-process too.
    CHECK(report_to_json(doc) == report_to_json(build_report(chart, cfg)));

    const SurfaceConfig sphere_cfg = parse_config_json(
        R"json({"kind":"preset","params":{"name":"sphere","r":2},"grid":[32,32]})json");
    const ReportDocument sphere_doc =
        build_report(build_chart(sphere_cfg), sphere_cfg);
    for (const auto& a : sphere_doc.fit.a)
      CHECK(*a == doctest::Approx(0.5).epsilon(1e-12));

    const SurfaceConfig cat_cfg = parse_config_json(
        R"json({"kind":"preset","params":{"name":"catenoid"},"grid":[32,32]})json");
    const ReportDocument cat_doc =
        build_report(build_chart(cat_cfg), cat_cfg);
    CHECK(cat_doc.H_norm.max < 1e-9);
    CHECK(cat_doc.verdict.minimal.yes);
  }

  TEST_CASE("csv dump shape") {
    const SurfaceConfig cfg = parse_config_json(
        R"json({"kind":"preset","params":{"name":"sphere"},"grid":[8,8]})json");
    const Chart chart = build_chart(cfg);
    const std::string csv = grid_csv(chart, cfg.grid);
    CHECK(csv.rfind("u,v,x1,x2,x3,K,Hnorm\n", 0) == 0);
    int lines = 0;
    for (char ch : csv)
      if (ch == '\n') ++lines;
    CHECK(lines == 1 + 64);
  }

  TEST_CASE("mesh export") {
    const SurfaceConfig cfg = parse_config_json(
        R"json({"kind":"preset","params":{"name":"clifford"},"grid":[64,64]})json");
    const Chart chart = build_chart(cfg);
    const std::string obj =
        mesh_obj(chart, cfg.grid, parse_projection("drop:3", 4));
    CHECK(count_prefix(obj, "v ") == 4096);
    CHECK(count_prefix(obj, "f ") == 8192);  // closed in both directions

    // The sphere preset is E^3: no projection, open in u, closed in v.
    const SurfaceConfig s = parse_config_json(
        R"json({"kind":"preset","params":{"name":"sphere"},"grid":[64,64]})json");
    const std::string sphere_obj =
        mesh_obj(build_chart(s), s.grid, Projection{});
    CHECK(count_prefix(sphere_obj, "v ") == 4096);
    CHECK(count_prefix(sphere_obj, "f ") == 2 * 63 * 64);

    // Stereographic projection stays finite off the pole.
    const std::string stereo =
        mesh_obj(chart, GridSpec{16, 16}, parse_projection("stereographic:-", 4));
    CHECK(count_prefix(stereo, "v ") == 256);

    // A domain override that breaks the period opens the mesh in u.
    const SurfaceConfig partial = parse_config_json(
        R"json({"kind":"preset","params":{"name":"clifford"},
                "domain":{"u":[0.0,3.0]},"grid":[16,16]})json");
    const std::string open_obj =
        mesh_obj(build_chart(partial), partial.grid,
                 parse_projection("drop:3", 4));
    CHECK(count_prefix(open_obj, "v ") == 256);
    CHECK(count_prefix(open_obj, "f ") == 2 * 15 * 16);

    CHECK_THROWS_AS(parse_projection("drop:7", 4), ConfigError);
    CHECK_THROWS_AS(parse_projection("drop:x", 4), ConfigError);
    CHECK_THROWS_AS(parse_projection("stereographic:+", 3), ConfigError);
    CHECK_THROWS_AS(parse_projection("shadow", 4), ConfigError);
    CHECK_THROWS_AS(mesh_obj(chart, cfg.grid, Projection{}), ConfigError);
  }

  TEST_CASE("binary: check exit codes") {
    const std::string clifford = write_temp(
        "clifford.json",
        R"json({"kind":"preset","params":{"name":"clifford","r":1},"grid":[32,32]})json");
    const RunResult yes = run_cli("check " + clifford + " --for cft");
    CHECK(yes.exit_code == 0);
    CHECK(yes.output.find("cft: yes") != std::string::npos);

    const std::string growing = write_temp(
        "growing.json",
        R"json({"kind":"vranceanu","params":{"r":"exp(u)"},"domain":{"u":[0,6.283185307179586]},"grid":[32,32]})json");
    const RunResult no = run_cli("check " + growing + " --for cft");
    CHECK(no.exit_code == 1);
    CHECK(no.output.find("cft: no") != std::string::npos);

    const std::string minimal = write_temp(
        "minimal.json",
        R"json({"kind":"preset","params":{"name":"minimal_vranceanu"},"grid":[32,32]})json");
    CHECK(run_cli("check " + minimal + " --for minimal").exit_code == 0);

    const RunResult multi =
        run_cli("check " + clifford + " --for flat,minimal,cft");
    CHECK(multi.exit_code == 1);  // minimal says no
    CHECK(count_prefix(multi.output, "flat:") == 1);
    CHECK(count_prefix(multi.output, "minimal:") == 1);
    CHECK(count_prefix(multi.output, "cft:") == 1);

    CHECK(run_cli("check " + clifford + " --for bogus 2>/dev/null")
              .exit_code == 2);
  }

  TEST_CASE("binary: input errors exit 2") {
    CHECK(run_cli("report missing.json 2>/dev/null").exit_code == 2);
    const std::string bad_expr = write_temp(
        "bad_expr.json",
        R"json({"kind":"vranceanu","params":{"r":"exp(0.3*w)"},"domain":{"u":[0,2]}})json");
    CHECK(run_cli("report " + bad_expr + " 2>/dev/null").exit_code == 2);
    const std::string bad_domain = write_temp(
        "bad_domain.json",
        R"json({"kind":"preset","params":{"name":"minimal_vranceanu"},"domain":{"u":[0,1.4]}})json");
    CHECK(run_cli("report " + bad_domain + " 2>/dev/null").exit_code == 2);
    const std::string clifford = write_temp(
        "clifford2.json",
        R"json({"kind":"preset","params":{"name":"clifford"},"grid":[16,16]})json");
    CHECK(run_cli("mesh " + clifford +
                  " --project drop:7 --out mesh_out.obj 2>/dev/null")
              .exit_code == 2);
    CHECK(run_cli("mesh " + clifford + " --out mesh_out.obj 2>/dev/null")
              .exit_code == 2);  // 4-coordinate chart without projection
  }

  TEST_CASE("binary: report determinism and mesh output") {
    const std::string config = write_temp(
        "det.json",
        R"json({"kind":"preset","params":{"name":"flat_vranceanu","mu":0.3},"grid":[16,16]})json");
    const RunResult a = run_cli("report " + config);
    const RunResult b = run_cli("report " + config);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"version\":\"0.1.0\"") != std::string::npos);

    const std::string mesh_path = "det_mesh.obj";
    CHECK(run_cli("mesh " + config + " --project stereographic:+ --out " +
                  mesh_path + " --grid 16x16")
              .exit_code == 0);
    std::ifstream in(mesh_path);
    REQUIRE(in.good());

    CHECK(run_cli("presets").output.find("clifford") != std::string::npos);
  }
}
