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

#include "rotsurf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

// Minimal deterministic JSON emitter. nlohmann would re-render floats in
// shortest-round-trip form; the report format pins 17 significant digits,
// so the document is written by hand with keys in a fixed order.
std::string jnum(double x) {
  if (!std::isfinite(x))
    throw NumericalError("non-finite value in report document");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string jint(long x) { return std::to_string(x); }

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

// Tiny builder: collects already-rendered key/value pairs and joins them.
class Obj {
 public:
  Obj& field(const std::string& key, std::string rendered) {
    parts_ += (parts_.empty() ? "" : ",");
    parts_ += jstr(key) + ":" + rendered;
    return *this;
  }
  std::string str() const { return "{" + parts_ + "}"; }

 private:
  std::string parts_;
};

std::string residual_json(const ResidualReport& r) {
  return Obj()
      .field("max_abs", jnum(r.max_abs))
      .field("normalization", jstr(r.normalization))
      .field("rms", jnum(r.rms))
      .field("samples_excluded", jint(r.samples_excluded))
      .field("samples_used", jint(r.samples_used))
      .str();
}

std::string stats_json(const GridStats& s) {
  return Obj()
      .field("max", jnum(s.max))
      .field("min", jnum(s.min))
      .field("rms", jnum(s.rms))
      .str();
}

std::string flag_json(const VerdictFlag& f, double threshold) {
  Obj o;
  if (!f.note.empty()) o.field("note", jstr(f.note));
  o.field("residual", jnum(f.residual))
      .field("threshold", jnum(threshold))
      .field("yes", f.yes ? "true" : "false");
  return o.str();
}

std::string interval_json(double lo, double hi) {
  return "[" + jnum(lo) + "," + jnum(hi) + "]";
}

std::string config_json(const SurfaceConfig& cfg, const Domain& resolved) {
  Obj params;
  switch (cfg.kind) {
    case SurfaceConfig::Kind::preset: {
      params.field("name", jstr(cfg.preset_name));
      for (const auto& [key, value] : cfg.preset_args)
        params.field(key, jnum(value));
      break;
    }
    case SurfaceConfig::Kind::vranceanu:
      params.field("r", jstr(cfg.r_expr));
      break;
    case SurfaceConfig::Kind::revolution:
      params.field("f", jstr(cfg.f_expr)).field("g", jstr(cfg.g_expr));
      break;
    case SurfaceConfig::Kind::generalized_rotation:
      params.field("c", jnum(cfg.c))
          .field("d", jnum(cfg.d))
          .field("f", jstr(cfg.f_expr))
          .field("g", jstr(cfg.g_expr));
      break;
  }
  const std::string domain = Obj()
                                 .field("u", interval_json(resolved.u0, resolved.u1))
                                 .field("v", interval_json(resolved.v0, resolved.v1))
                                 .str();
  return Obj()
      .field("domain", domain)
      .field("grid", "[" + std::to_string(cfg.grid.nu) + "," +
                         std::to_string(cfg.grid.nv) + "]")
      .field("kind", jstr(kind_name(cfg.kind)))
      .field("params", params.str())
      .field("thresholds",
             Obj().field("tau", jnum(cfg.thresholds.tau)).str())
      .str();
}

std::string ode_json(const OdeResidual& ode) {
  Obj o;
  o.field("constant", ode.constant ? jnum(*ode.constant) : "null");
  o.field("report", residual_json(ode.report));
  return o.str();
}

}  // namespace

ReportDocument build_report(const Chart& chart, const SurfaceConfig& config) {
  ReportDocument doc;
  doc.config = config;
  doc.domain = chart.domain;
  doc.ambient_dim = chart.ambient_dim;
  const GridSpec grid = config.grid;

  // Grid statistics for K and |H|.
  doc.K.min = std::numeric_limits<double>::infinity();
  doc.K.max = -std::numeric_limits<double>::infinity();
  doc.H_norm.min = std::numeric_limits<double>::infinity();
  doc.H_norm.max = -std::numeric_limits<double>::infinity();
  double k_sq = 0.0, h_sq = 0.0;
  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v =
          grid_point(chart.domain.v0, chart.domain.v1, grid.nv, j);
      try {
        const CurvatureReport cr = curvature_report(chart.eval(u, v));
        doc.K.min = std::min(doc.K.min, cr.K);
        doc.K.max = std::max(doc.K.max, cr.K);
        k_sq += cr.K * cr.K;
        doc.H_norm.min = std::min(doc.H_norm.min, cr.H_norm);
        doc.H_norm.max = std::max(doc.H_norm.max, cr.H_norm);
        h_sq += cr.H_norm * cr.H_norm;
        ++doc.stats_used;
      } catch (const DomainError&) {
        ++doc.stats_excluded;
      } catch (const DegeneratePointError&) {
        ++doc.stats_excluded;
      }
    }
  }
  if (doc.stats_used == 0)
    throw UndeterminedError("every grid sample was excluded");
  doc.K.rms = std::sqrt(k_sq / static_cast<double>(doc.stats_used));
  doc.H_norm.rms = std::sqrt(h_sq / static_cast<double>(doc.stats_used));

  doc.beltrami = beltrami_check(chart, grid);
  doc.flatness = flatness_residual(chart, grid);
  doc.minimality = minimality_residual(chart, grid);
  doc.pseudo_umbilical = pseudo_umbilical_residual(chart, grid);

  if (chart.rotation) {
    doc.relation = relation_residual(*chart.rotation, grid.nu);
    doc.pointwise = pointwise_diagonal(*chart.rotation, grid.nu);
    if (chart.rotation->vranceanu_r) {
      const ExprAst& r = *chart.rotation->vranceanu_r;
      const Interval u = chart.rotation->u;
      doc.ode_flat =
          vranceanu_ode_residual(r, u, VranceanuOde::flat, grid.nu);
      doc.ode_minimal =
          vranceanu_ode_residual(r, u, VranceanuOde::minimal, grid.nu);
      doc.ode_cft = vranceanu_ode_residual(r, u, VranceanuOde::cft, grid.nu);
    }
  } else if (chart.revolution) {
    doc.relation = relation_residual(*chart.revolution, grid.nu);
    doc.pointwise = pointwise_diagonal(*chart.revolution, grid.nu);
  }

  doc.fit = fit_diagonal(chart, grid);
  doc.verdict = classify_surface(chart, grid, config.thresholds);
  return doc;
}

std::string report_to_json(const ReportDocument& doc) {
  Obj root;

  root.field("classification",
             Obj()
                 .field("coordinate_finite_type",
                        flag_json(doc.verdict.coordinate_finite_type,
                                  doc.verdict.threshold))
                 .field("flat", flag_json(doc.verdict.flat,
                                          doc.verdict.threshold))
                 .field("minimal", flag_json(doc.verdict.minimal,
                                             doc.verdict.threshold))
                 .field("pseudo_umbilical",
                        flag_json(doc.verdict.pseudo_umbilical,
                                  doc.verdict.threshold))
                 .str());

  root.field("config", config_json(doc.config, doc.domain));

  {
    Obj fit;
    std::string a = "[";
    for (std::size_t i = 0; i < doc.fit.a.size(); ++i) {
      a += (i ? "," : "");
      a += doc.fit.a[i] ? jnum(*doc.fit.a[i]) : "null";
    }
    a += "]";
    std::string mass = "[";
    for (std::size_t i = 0; i < doc.fit.coordinate_mass.size(); ++i) {
      mass += (i ? "," : "");
      mass += jnum(doc.fit.coordinate_mass[i]);
    }
    mass += "]";
    fit.field("a", a)
        .field("coordinate_mass", mass)
        .field("residual", jnum(doc.fit.residual))
        .field("samples_excluded", jint(doc.fit.samples_excluded))
        .field("samples_used", jint(doc.fit.samples_used));
    root.field("diagonal_fit", fit.str());
  }

  root.field("grid_stats", Obj()
                               .field("H_norm", stats_json(doc.H_norm))
                               .field("K", stats_json(doc.K))
                               .field("samples_excluded",
                                      jint(doc.stats_excluded))
                               .field("samples_used", jint(doc.stats_used))
                               .str());

  if (doc.pointwise) {
    const PointwiseDiagonal& pw = *doc.pointwise;
    auto series = [&](const std::vector<double>& s) {
      const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
      return Obj().field("max", jnum(*hi)).field("min", jnum(*lo)).str();
    };
    root.field("pointwise_diagonal",
               Obj()
                   .field(pw.labels[0], series(pw.first))
                   .field(pw.labels[1], series(pw.second))
                   .field("constancy", jnum(pw.constancy))
                   .field("samples_excluded", jint(pw.samples_excluded))
                   .field("samples_used", jint(pw.samples_used))
                   .str());
  }

  {
    Obj res;
    res.field("beltrami", residual_json(doc.beltrami));
    res.field("flatness", residual_json(doc.flatness));
    res.field("minimality", residual_json(doc.minimality));
    if (doc.pseudo_umbilical.closed_form)
      res.field("pseudo_umbilical_closed",
                residual_json(*doc.pseudo_umbilical.closed_form));
    res.field("pseudo_umbilical_generic",
              Obj()
                  .field("report", residual_json(doc.pseudo_umbilical.generic))
                  .field("vacuous",
                         doc.pseudo_umbilical.vacuous ? "true" : "false")
                  .str());
    if (doc.relation)
      res.field("relation",
                Obj()
                    .field("constant", doc.relation->constant
                                           ? jnum(*doc.relation->constant)
                                           : "null")
                    .field("form", jstr(doc.relation->form))
                    .field("report", residual_json(doc.relation->report))
                    .str());
    if (doc.ode_cft) res.field("vranceanu_ode_cft", ode_json(*doc.ode_cft));
    if (doc.ode_flat) res.field("vranceanu_ode_flat", ode_json(*doc.ode_flat));
    if (doc.ode_minimal)
      res.field("vranceanu_ode_minimal", ode_json(*doc.ode_minimal));
    root.field("residuals", res.str());
  }

  root.field("version", jstr(kVersion));
  return root.str() + "\n";
}

std::string grid_csv(const Chart& chart, const GridSpec& grid) {
  std::string out = "u,v";
  for (int i = 0; i < chart.ambient_dim; ++i)
    out += ",x" + std::to_string(i + 1);
  out += ",K,Hnorm\n";
  for (int i = 0; i < grid.nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, grid.nu, i);
    for (int j = 0; j < grid.nv; ++j) {
      const double v =
          grid_point(chart.domain.v0, chart.domain.v1, grid.nv, j);
      try {
        const ChartJets jets = chart.eval(u, v);
        const CurvatureReport cr = curvature_report(jets);
        const Vec x = jets.position();
        out += jnum(u) + "," + jnum(v);
        for (int k = 0; k < chart.ambient_dim; ++k) out += "," + jnum(x[k]);
        out += "," + jnum(cr.K) + "," + jnum(cr.H_norm) + "\n";
      } catch (const DomainError&) {
      } catch (const DegeneratePointError&) {
      }
    }
  }
  return out;
}

}  // namespace rotsurf
