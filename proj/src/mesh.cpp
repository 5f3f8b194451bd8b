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

#include "rotsurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) throw NumericalError("non-finite mesh coordinate");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// A direction wraps when the chart takes the same positions on both
// boundary edges; probed at a few midpoints of the other direction.
bool wraps(const Chart& chart, bool in_u) {
  constexpr int kProbes = 5;
  double scale = 0.0;
  std::vector<std::pair<Vec, Vec>> pairs;
  for (int k = 0; k < kProbes; ++k) {
    const double t = (k + 0.5) / kProbes;
    const double u0 = chart.domain.u0, u1 = chart.domain.u1;
    const double v0 = chart.domain.v0, v1 = chart.domain.v1;
    try {
      Vec a, b;
      if (in_u) {
        const double v = v0 + (v1 - v0) * t;
        a = chart.eval(u0, v).position();
        b = chart.eval(u1, v).position();
      } else {
        const double u = u0 + (u1 - u0) * t;
        a = chart.eval(u, v0).position();
        b = chart.eval(u, v1).position();
      }
      scale = std::max({scale, norm(a), norm(b)});
      pairs.emplace_back(a, b);
    } catch (const Error&) {
      return false;  // boundary not even evaluable, cannot wrap
    }
  }
  for (const auto& [a, b] : pairs)
    if (norm(a - b) > 1e-9 * (1.0 + scale)) return false;
  return true;
}

std::array<double, 3> project(const Vec& x, const Projection& p, double R) {
  switch (p.kind) {
    case Projection::Kind::none:
      return {x[0], x[1], x.n > 2 ? x[2] : 0.0};
    case Projection::Kind::drop: {
      std::array<double, 3> out{};
      int j = 0;
      for (int i = 0; i < x.n; ++i)
        if (i != p.drop_index) out[static_cast<std::size_t>(j++)] = x[i];
      while (j < 3) out[static_cast<std::size_t>(j++)] = 0.0;
      return out;
    }
    case Projection::Kind::stereographic: {
      const double pole = p.pole_sign * R;
      const double denom = pole - x[3];
      if (std::fabs(denom) < 1e-12 * (1.0 + R))
        throw NumericalError("stereographic projection hit the pole");
      const double t = pole / denom;
      return {t * x[0], t * x[1], t * x[2]};
    }
  }
  throw NumericalError("corrupt projection");
}

}  // namespace

Projection parse_projection(const std::string& text, int ambient_dim) {
  Projection p;
  if (text.rfind("drop:", 0) == 0) {
    p.kind = Projection::Kind::drop;
    try {
      std::size_t used = 0;
      p.drop_index = std::stoi(text.substr(5), &used);
      if (used != text.size() - 5) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ConfigError("invalid projection '" + text +
                        "' (expected drop:<index>)");
    }
    if (p.drop_index < 0 || p.drop_index >= ambient_dim)
      throw ConfigError("coordinate index out of range in '" + text +
                        "' for a " + std::to_string(ambient_dim) +
                        "-coordinate chart");
    return p;
  }
  if (text == "stereographic:+" || text == "stereographic:-") {
    if (ambient_dim != 4)
      throw ConfigError("stereographic projection applies to 4-coordinate "
                        "charts only");
    p.kind = Projection::Kind::stereographic;
    p.pole_sign = text.back() == '+' ? +1 : -1;
    return p;
  }
  throw ConfigError("invalid projection '" + text +
                    "' (expected drop:<index>, stereographic:+, or "
                    "stereographic:-)");
}

std::string mesh_obj(const Chart& chart, const GridSpec& grid,
                     const Projection& projection) {
  if (chart.ambient_dim == 4 && projection.kind == Projection::Kind::none)
    throw ConfigError("a 4-coordinate chart needs a projection for export");

  const int nu = grid.nu, nv = grid.nv;
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  double max_norm = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double u = grid_point(chart.domain.u0, chart.domain.u1, nu, i);
    for (int j = 0; j < nv; ++j) {
      const double v = grid_point(chart.domain.v0, chart.domain.v1, nv, j);
      points.push_back(chart.eval(u, v).position());
      max_norm = std::max(max_norm, norm(points.back()));
    }
  }

  std::string out;
  out.reserve(points.size() * 64);
  for (const Vec& x : points) {
    const auto p = project(x, projection, max_norm);
    out += "v " + fmt(p[0]) + " " + fmt(p[1]) + " " + fmt(p[2]) + "\n";
  }

  const bool wrap_u = wraps(chart, true);
  const bool wrap_v = wraps(chart, false);
  const int iu_max = wrap_u ? nu : nu - 1;
  const int jv_max = wrap_v ? nv : nv - 1;
  auto idx = [nv](int i, int j) { return i * nv + j + 1; };  // OBJ is 1-based
  for (int i = 0; i < iu_max; ++i) {
    const int i1 = (i + 1) % nu;
    for (int j = 0; j < jv_max; ++j) {
      const int j1 = (j + 1) % nv;
      // Quad (i,j)-(i1,j)-(i1,j1)-(i,j1), counterclockwise in (u, v).
      char buf[96];
      std::snprintf(buf, sizeof(buf), "f %d %d %d\nf %d %d %d\n", idx(i, j),
                    idx(i1, j), idx(i1, j1), idx(i, j), idx(i1, j1),
                    idx(i, j1));
      out += buf;
    }
  }
  return out;
}

}  // namespace rotsurf
