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

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "rotsurf/jet.hpp"

namespace rotsurf {

/// Unary primitives the expression language knows about.
enum class PrimFn { sin, cos, tan, exp, log, sqrt, sinh, cosh };

const char* prim_name(PrimFn f);

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

/// One node of a parsed expression. Trees are immutable after parsing and
/// may be shared freely between threads.
struct ExprNode {
  enum class Kind { number, constant, variable, negate, binary, call };

  Kind kind = Kind::number;
  std::size_t offset = 0;  // byte offset of the node's token in the source

  double number = 0.0;      // Kind::number
  char constant = 0;        // Kind::constant: 'p' for pi, 'e' for e
  int variable = 0;         // Kind::variable: 0 = u, 1 = v
  char op = 0;              // Kind::binary: '+', '-', '*', '/', '^'
  PrimFn fn = PrimFn::sin;  // Kind::call
  ExprNodePtr lhs, rhs;     // rhs is null for negate and call
};

/// Which variable names an expression may reference.
struct VarSet {
  bool u = false;
  bool v = false;

  static VarSet u_only() { return {true, false}; }
  static VarSet uv() { return {true, true}; }
};

struct ParseError {
  std::size_t offset = 0;  // byte offset, <= source length
  std::string expected;    // what the parser wanted here
  std::string found;       // text of the offending token

  std::string message() const;
};

class ExprAst {
 public:
  ExprAst() = default;
  ExprAst(ExprNodePtr root, std::string source);

  const ExprNode* root() const { return root_.get(); }
  const std::string& source() const { return source_; }
  bool valid() const { return root_ != nullptr; }
  bool uses_u() const { return uses_u_; }
  bool uses_v() const { return uses_v_; }

 private:
  ExprNodePtr root_;
  std::string source_;
  bool uses_u_ = false;
  bool uses_v_ = false;
};

/// Parse `source` against the declared variable set. Grammar, from loosest
/// to tightest binding: additive, multiplicative, unary minus, power
/// (right-associative), atoms. Implicit multiplication is not supported.
std::variant<ExprAst, ParseError> parse(std::string_view source, VarSet vars);

/// Parse a string that is expected to be well-formed (preset construction,
/// tests); a failure becomes a ConstructionError.
ExprAst parse_or_throw(std::string_view source, VarSet vars);

/// Evaluate over jets. Domain errors from primitives are rethrown with the
/// source offset of the failing node attached.
Jet2 eval_jet(const ExprAst& ast, const Jet2& u);
Jet2 eval_jet(const ExprAst& ast, const Jet2& u, const Jet2& v);

/// Render with minimal parentheses; the output re-parses to a structurally
/// identical tree.
std::string to_string(const ExprAst& ast);

bool structurally_equal(const ExprAst& a, const ExprAst& b);

}  // namespace rotsurf
