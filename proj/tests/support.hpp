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

// Test-only oracles: a long-double scalar evaluator independent of the jet
// path, finite-difference jets built from it, and a deterministic random
// expression generator. None of this is reachable from the library.

#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rotsurf/expr.hpp"

namespace testsupport {

inline long double eval_scalar(const rotsurf::ExprNode* n, long double u,
                               long double v) {
  using rotsurf::ExprNode;
  using rotsurf::PrimFn;
  switch (n->kind) {
    case ExprNode::Kind::number:
      return static_cast<long double>(n->number);
    case ExprNode::Kind::constant:
      return n->constant == 'p' ? 3.14159265358979323846264338327950288L
                                : 2.71828182845904523536028747135266250L;
    case ExprNode::Kind::variable:
      return n->variable == 0 ? u : v;
    case ExprNode::Kind::negate:
      return -eval_scalar(n->lhs.get(), u, v);
    case ExprNode::Kind::binary: {
      const long double a = eval_scalar(n->lhs.get(), u, v);
      switch (n->op) {
        case '+':
          return a + eval_scalar(n->rhs.get(), u, v);
        case '-':
          return a - eval_scalar(n->rhs.get(), u, v);
        case '*':
          return a * eval_scalar(n->rhs.get(), u, v);
        case '/':
          return a / eval_scalar(n->rhs.get(), u, v);
        case '^':
          return powl(a, eval_scalar(n->rhs.get(), u, v));
      }
      return 0.0L;
    }
    case ExprNode::Kind::call: {
      const long double a = eval_scalar(n->lhs.get(), u, v);
      switch (n->fn) {
        case PrimFn::sin:
          return sinl(a);
        case PrimFn::cos:
          return cosl(a);
        case PrimFn::tan:
          return tanl(a);
        case PrimFn::exp:
          return expl(a);
        case PrimFn::log:
          return logl(a);
        case PrimFn::sqrt:
          return sqrtl(a);
        case PrimFn::sinh:
          return sinhl(a);
        case PrimFn::cosh:
          return coshl(a);
      }
      return 0.0L;
    }
  }
  return 0.0L;
}

inline long double eval_scalar(const rotsurf::ExprAst& ast, long double u,
                               long double v = 0.0L) {
  return eval_scalar(ast.root(), u, v);
}

/// Plain double evaluator mirroring the jet value path operation for
/// operation; the reference for the value-agreement property.
inline double eval_scalar_double(const rotsurf::ExprNode* n, double u,
                                 double v) {
  using rotsurf::ExprNode;
  using rotsurf::PrimFn;
  switch (n->kind) {
    case ExprNode::Kind::number:
      return n->number;
    case ExprNode::Kind::constant:
      return n->constant == 'p' ? std::numbers::pi : std::numbers::e;
    case ExprNode::Kind::variable:
      return n->variable == 0 ? u : v;
    case ExprNode::Kind::negate:
      return -eval_scalar_double(n->lhs.get(), u, v);
    case ExprNode::Kind::binary: {
      const double a = eval_scalar_double(n->lhs.get(), u, v);
      switch (n->op) {
        case '+':
          return a + eval_scalar_double(n->rhs.get(), u, v);
        case '-':
          return a - eval_scalar_double(n->rhs.get(), u, v);
        case '*':
          return a * eval_scalar_double(n->rhs.get(), u, v);
        case '/':
          return a / eval_scalar_double(n->rhs.get(), u, v);
        case '^':
          return std::pow(a, eval_scalar_double(n->rhs.get(), u, v));
      }
      return 0.0;
    }
    case ExprNode::Kind::call: {
      const double a = eval_scalar_double(n->lhs.get(), u, v);
      switch (n->fn) {
        case PrimFn::sin:
          return std::sin(a);
        case PrimFn::cos:
          return std::cos(a);
        case PrimFn::tan:
          return std::tan(a);
        case PrimFn::exp:
          return std::exp(a);
        case PrimFn::log:
          return std::log(a);
        case PrimFn::sqrt:
          return std::sqrt(a);
        case PrimFn::sinh:
          return std::sinh(a);
        case PrimFn::cosh:
          return std::cosh(a);
      }
      return 0.0;
    }
  }
  return 0.0;
}

inline double eval_scalar_double(const rotsurf::ExprAst& ast, double u,
                                 double v = 0.0) {
  return eval_scalar_double(ast.root(), u, v);
}

/// Central finite differences of the scalar evaluation, step 1e-5 unless
/// overridden, carried in long double so the second differences keep ~9
/// good digits.
inline rotsurf::Jet2 fd_jet(const rotsurf::ExprAst& ast, double u, double v,
                            long double h = 1e-5L) {
  const long double uu = u, vv = v;
  auto S = [&](long double du, long double dv) {
    return eval_scalar(ast, uu + du, vv + dv);
  };
  rotsurf::Jet2 j;
  const long double c = S(0, 0);
  j.val = static_cast<double>(c);
  j.du = static_cast<double>((S(h, 0) - S(-h, 0)) / (2 * h));
  j.dv = static_cast<double>((S(0, h) - S(0, -h)) / (2 * h));
  j.duu = static_cast<double>((S(h, 0) - 2 * c + S(-h, 0)) / (h * h));
  j.dvv = static_cast<double>((S(0, h) - 2 * c + S(0, -h)) / (h * h));
  j.duv = static_cast<double>(
      (S(h, h) - S(h, -h) - S(-h, h) + S(-h, -h)) / (4 * h * h));
  return j;
}

inline bool close(double a, double b, double rel, double abs) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)) + abs;
}

/// Grammar-directed generator; emits fully parenthesized source strings so
/// the parser, not hand-built nodes, produces the trees under test.
class RandomExprGen {
 public:
  explicit RandomExprGen(unsigned seed, bool allow_v)
      : rng_(seed), allow_v_(allow_v) {}

  std::string next(int max_depth = 4) { return gen(max_depth); }

 private:
  std::string gen(int depth) {
    const int r = pick(100);
    if (depth <= 0 || r < 25) return leaf();
    if (r < 35) return "(-" + gen(depth - 1) + ")";
    if (r < 60) {
      static const char* fns[] = {"sin", "cos",  "tan",  "exp",
                                  "log", "sqrt", "sinh", "cosh"};
      return std::string(fns[pick(8)]) + "(" + gen(depth - 1) + ")";
    }
    if (r < 70) {
      static const char* exps[] = {"2", "3", "0.5", "1.5"};
      return "(" + gen(depth - 1) + ")^" + exps[pick(4)];
    }
    static const char ops[] = {'+', '-', '*', '/'};
    return "(" + gen(depth - 1) + ")" + std::string(1, ops[pick(4)]) + "(" +
           gen(depth - 1) + ")";
  }

  std::string leaf() {
    const int r = pick(100);
    if (r < 40) return "u";
    if (r < 55 && allow_v_) return "v";
    if (r < 60) return "pi";
    if (r < 65) return "e";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", 0.2 + 2.3 * uniform());
    return buf;
  }

  int pick(int n) {
    return static_cast<int>(rng_() % static_cast<unsigned>(n));
  }
  double uniform() {
    return static_cast<double>(rng_()) /
           static_cast<double>(std::mt19937::max());
  }

  std::mt19937 rng_;
  bool allow_v_;
};

/// Draw (expression, point) pairs on which both the jet evaluation and the
/// whole finite-difference stencil are well defined and tame.
struct ExprSamples {
  std::vector<std::pair<rotsurf::ExprAst, std::pair<double, double>>> items;
};

inline ExprSamples sample_expressions(unsigned seed, int n_expr,
                                      int points_per_expr, bool allow_v) {
  ExprSamples out;
  RandomExprGen gen(seed, allow_v);
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  auto coord = [&rng]() {
    return -2.0 + 4.0 * static_cast<double>(rng()) /
                      static_cast<double>(std::mt19937::max());
  };

  while (static_cast<int>(out.items.size()) < n_expr * points_per_expr) {
    const std::string src = gen.next();
    auto parsed = rotsurf::parse(
        src, allow_v ? rotsurf::VarSet::uv() : rotsurf::VarSet::u_only());
    if (std::holds_alternative<rotsurf::ParseError>(parsed)) continue;
    const rotsurf::ExprAst ast = std::get<rotsurf::ExprAst>(std::move(parsed));

    int found = 0;
    for (int attempt = 0; attempt < 40 && found < points_per_expr;
         ++attempt) {
      const double u = coord();
      const double v = allow_v ? coord() : 0.0;
      try {
        const rotsurf::Jet2 ju = rotsurf::Jet2::var_u(u);
        const rotsurf::Jet2 j =
            allow_v ? rotsurf::eval_jet(ast, ju, rotsurf::Jet2::var_v(v))
                    : rotsurf::eval_jet(ast, ju);
        const double cap = 1e4;
        if (std::fabs(j.val) > cap || std::fabs(j.du) > cap ||
            std::fabs(j.dv) > cap || std::fabs(j.duu) > cap ||
            std::fabs(j.duv) > cap || std::fabs(j.dvv) > cap)
          continue;
        // The whole FD stencil must stay finite and tame too.
        bool ok = true;
        for (int s = 0; s < 9 && ok; ++s) {
          const long double h = 2e-5L;
          const long double du = (s % 3 - 1) * h, dv = (s / 3 - 1) * h;
          const long double val = eval_scalar(ast, u + du, v + dv);
          ok = std::isfinite(static_cast<double>(val)) &&
               fabsl(val) < 1e6L;
        }
        if (!ok) continue;
        // The oracle must certify its own truncation error: halving the
        // step may move any difference quotient by at most a quarter of
        // the comparison tolerance (the h^2 error shrinks fourfold).
        const rotsurf::Jet2 fd1 = fd_jet(ast, u, v, 1e-5L);
        const rotsurf::Jet2 fd2 = fd_jet(ast, u, v, 2e-5L);
        auto certified = [](double at_h, double at_2h) {
          return std::fabs(at_h - at_2h) <=
                 0.25 * (1e-6 * std::fabs(at_h) + 1e-8);
        };
        if (!certified(fd1.du, fd2.du) || !certified(fd1.dv, fd2.dv) ||
            !certified(fd1.duu, fd2.duu) || !certified(fd1.duv, fd2.duv) ||
            !certified(fd1.dvv, fd2.dvv))
          continue;
        out.items.emplace_back(ast, std::make_pair(u, v));
        ++found;
      } catch (const rotsurf::Error&) {
        continue;
      }
    }
  }
  return out;
}

}  // namespace testsupport
