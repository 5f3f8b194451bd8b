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

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rotsurf/errors.hpp"

namespace rotsurf {

/// Truncated second-order Taylor expansion of a scalar in two variables:
/// value, both first partials and the three second partials. This is the
/// differentiation currency of the whole engine; every chart coordinate is
/// evaluated as a Jet2 and all curvature formulas read the six fields.
///
/// Non-finite values are rejected eagerly at operation boundaries, so a
/// degenerate evaluation fails at the first bad point instead of
/// propagating NaNs into grid reductions.
struct Jet2 {
  double val = 0.0;
  double du = 0.0;
  double dv = 0.0;
  double duu = 0.0;
  double duv = 0.0;
  double dvv = 0.0;

  static Jet2 constant(double x);
  static Jet2 var_u(double x);
  static Jet2 var_v(double x);
};

namespace detail {

inline std::string fmt_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void require_finite_seed(double x) {
  if (!std::isfinite(x))
    throw InvalidInputError("jet seed from non-finite value " + fmt_value(x));
}

inline Jet2 require_finite(Jet2 j, const char* op) {
  if (!(std::isfinite(j.val) && std::isfinite(j.du) && std::isfinite(j.dv) &&
        std::isfinite(j.duu) && std::isfinite(j.duv) && std::isfinite(j.dvv)))
    throw DomainError(std::string("non-finite result in jet ") + op);
  return j;
}

// Univariate chain rule at order 2: g(a) from g(a0), g'(a0), g''(a0).
inline Jet2 compose(const Jet2& a, double g0, double g1, double g2,
                    const char* name) {
  Jet2 r;
  r.val = g0;
  r.du = g1 * a.du;
  r.dv = g1 * a.dv;
  r.duu = g2 * a.du * a.du + g1 * a.duu;
  r.duv = g2 * a.du * a.dv + g1 * a.duv;
  r.dvv = g2 * a.dv * a.dv + g1 * a.dvv;
  return require_finite(r, name);
}

}  // namespace detail

inline Jet2 Jet2::constant(double x) {
  detail::require_finite_seed(x);
  Jet2 j;
  j.val = x;
  return j;
}

inline Jet2 Jet2::var_u(double x) {
  detail::require_finite_seed(x);
  Jet2 j;
  j.val = x;
  j.du = 1.0;
  return j;
}

inline Jet2 Jet2::var_v(double x) {
  detail::require_finite_seed(x);
  Jet2 j;
  j.val = x;
  j.dv = 1.0;
  return j;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val + b.val;
  r.du = a.du + b.du;
  r.dv = a.dv + b.dv;
  r.duu = a.duu + b.duu;
  r.duv = a.duv + b.duv;
  r.dvv = a.dvv + b.dvv;
  return detail::require_finite(r, "add");
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val - b.val;
  r.du = a.du - b.du;
  r.dv = a.dv - b.dv;
  r.duu = a.duu - b.duu;
  r.duv = a.duv - b.duv;
  r.dvv = a.dvv - b.dvv;
  return detail::require_finite(r, "sub");
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.val = -a.val;
  r.du = -a.du;
  r.dv = -a.dv;
  r.duu = -a.duu;
  r.duv = -a.duv;
  r.dvv = -a.dvv;
  return r;
}

// The accumulation order below is symmetric in (a, b), so swapping the
// factors reproduces the result bit for bit.
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val * b.val;
  r.du = a.du * b.val + a.val * b.du;
  r.dv = a.dv * b.val + a.val * b.dv;
  r.duu = (a.duu * b.val + a.val * b.duu) + 2.0 * (a.du * b.du);
  r.duv = (a.duv * b.val + a.val * b.duv) + (a.du * b.dv + a.dv * b.du);
  r.dvv = (a.dvv * b.val + a.val * b.dvv) + 2.0 * (a.dv * b.dv);
  return detail::require_finite(r, "mul");
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.val == 0.0) throw DomainError("division by zero-valued jet");
  Jet2 q;
  q.val = a.val / b.val;
  q.du = (a.du - q.val * b.du) / b.val;
  q.dv = (a.dv - q.val * b.dv) / b.val;
  q.duu = (a.duu - 2.0 * q.du * b.du - q.val * b.duu) / b.val;
  q.duv = (a.duv - q.du * b.dv - q.dv * b.du - q.val * b.duv) / b.val;
  q.dvv = (a.dvv - 2.0 * q.dv * b.dv - q.val * b.dvv) / b.val;
  return detail::require_finite(q, "div");
}

inline Jet2 operator+(const Jet2& a, double s) { return a + Jet2::constant(s); }
inline Jet2 operator+(double s, const Jet2& a) { return Jet2::constant(s) + a; }
inline Jet2 operator-(const Jet2& a, double s) { return a - Jet2::constant(s); }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }
inline Jet2 operator*(const Jet2& a, double s) { return a * Jet2::constant(s); }
inline Jet2 operator*(double s, const Jet2& a) { return Jet2::constant(s) * a; }
inline Jet2 operator/(const Jet2& a, double s) { return a / Jet2::constant(s); }
inline Jet2 operator/(double s, const Jet2& a) { return Jet2::constant(s) / a; }

inline Jet2 sin(const Jet2& a) {
  return detail::compose(a, std::sin(a.val), std::cos(a.val), -std::sin(a.val),
                         "sin");
}

inline Jet2 cos(const Jet2& a) {
  return detail::compose(a, std::cos(a.val), -std::sin(a.val),
                         -std::cos(a.val), "cos");
}

inline Jet2 tan(const Jet2& a) {
  const double c = std::cos(a.val);
  if (std::fabs(c) <= 1e-12)
    throw DomainError("tan evaluated too close to a pole at argument " +
                      detail::fmt_value(a.val));
  const double t = std::tan(a.val);
  const double sec2 = 1.0 + t * t;
  return detail::compose(a, t, sec2, 2.0 * t * sec2, "tan");
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.val);
  return detail::compose(a, e, e, e, "exp");
}

inline Jet2 log(const Jet2& a) {
  if (!(a.val > 0.0))
    throw DomainError("log requires a positive argument, got " +
                      detail::fmt_value(a.val));
  return detail::compose(a, std::log(a.val), 1.0 / a.val,
                         -1.0 / (a.val * a.val), "log");
}

inline Jet2 sqrt(const Jet2& a) {
  if (!(a.val > 0.0))
    throw DomainError("sqrt requires a positive argument, got " +
                      detail::fmt_value(a.val));
  const double s = std::sqrt(a.val);
  return detail::compose(a, s, 0.5 / s, -0.25 / (a.val * s), "sqrt");
}

inline Jet2 sinh(const Jet2& a) {
  return detail::compose(a, std::sinh(a.val), std::cosh(a.val),
                         std::sinh(a.val), "sinh");
}

inline Jet2 cosh(const Jet2& a) {
  return detail::compose(a, std::cosh(a.val), std::sinh(a.val),
                         std::cosh(a.val), "cosh");
}

/// Integer power by repeated squaring on jets. Negative exponents go
/// through the reciprocal and require a nonzero base value.
inline Jet2 pow_int(const Jet2& a, long long n) {
  if (n < 0) {
    if (n == std::numeric_limits<long long>::min())
      throw InvalidInputError("integer exponent out of range");
    return Jet2::constant(1.0) / pow_int(a, -n);
  }
  Jet2 result = Jet2::constant(1.0);
  Jet2 base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

/// Real power, rewritten as exp(e * log(base)); the base must be positive.
inline Jet2 pow(const Jet2& a, double e) {
  if (!(a.val > 0.0))
    throw DomainError("pow with real exponent requires a positive base, got " +
                      detail::fmt_value(a.val));
  return exp(log(a) * e);
}

}  // namespace rotsurf
