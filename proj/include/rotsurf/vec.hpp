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
#include <cmath>
#include <cstddef>

namespace rotsurf {

/// Ambient-space vector: dimension 3 or 4 at runtime, fixed capacity 4.
struct Vec {
  int n = 0;
  std::array<double, 4> a{};

  static Vec zero(int dim) {
    Vec v;
    v.n = dim;
    return v;
  }

  double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }
};

inline Vec operator+(Vec x, const Vec& y) {
  for (int i = 0; i < x.n; ++i) x[i] += y[i];
  return x;
}

inline Vec operator-(Vec x, const Vec& y) {
  for (int i = 0; i < x.n; ++i) x[i] -= y[i];
  return x;
}

inline Vec operator*(double s, Vec x) {
  for (int i = 0; i < x.n; ++i) x[i] *= s;
  return x;
}

inline Vec operator-(Vec x) {
  for (int i = 0; i < x.n; ++i) x[i] = -x[i];
  return x;
}

inline Vec& operator+=(Vec& x, const Vec& y) {
  for (int i = 0; i < x.n; ++i) x[i] += y[i];
  return x;
}

inline Vec& operator-=(Vec& x, const Vec& y) {
  for (int i = 0; i < x.n; ++i) x[i] -= y[i];
  return x;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

}  // namespace rotsurf
