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

#include "rotsurf/expr.hpp"

#include <array>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "rotsurf/errors.hpp"

namespace rotsurf {

namespace {

constexpr std::array<const char*, 8> kPrimNames = {
    "sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"};

std::optional<PrimFn> lookup_prim(std::string_view name) {
  for (std::size_t i = 0; i < kPrimNames.size(); ++i)
    if (name == kPrimNames[i]) return static_cast<PrimFn>(i);
  return std::nullopt;
}

struct Token {
  enum class Type { number, ident, op, lparen, rparen, end };
  Type type = Type::end;
  std::size_t offset = 0;
  std::string_view text;
  double value = 0.0;  // Type::number
};

// Thrown internally by the parser; converted to a ParseError at the API
// boundary so callers see a value, not an exception.
struct ParseFailure {
  ParseError error;
};

[[noreturn]] void fail(std::size_t offset, std::string expected,
                       std::string found) {
  throw ParseFailure{ParseError{offset, std::move(expected), std::move(found)}};
}

std::string describe(const Token& t) {
  if (t.type == Token::Type::end) return "end of input";
  return std::string(t.text);
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    current_ = Token{};
    current_.offset = pos_;
    if (pos_ >= src_.size()) {
      current_.type = Token::Type::end;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) ||
              src_[end] == '_'))
        ++end;
      current_.type = Token::Type::ident;
      current_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    if (c == '(') {
      current_.type = Token::Type::lparen;
      current_.text = src_.substr(pos_, 1);
      ++pos_;
      return;
    }
    if (c == ')') {
      current_.type = Token::Type::rparen;
      current_.text = src_.substr(pos_, 1);
      ++pos_;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      current_.type = Token::Type::op;
      current_.text = src_.substr(pos_, 1);
      ++pos_;
      return;
    }
    fail(pos_, "a number, identifier, operator, or parenthesis",
         std::string(1, c));
  }

  void lex_number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    bool any_digit = false;
    while (end < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[end]))) {
      ++end;
      any_digit = true;
    }
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[end]))) {
        ++end;
        any_digit = true;
      }
    }
    if (!any_digit) fail(start, "a number", std::string(1, src_[start]));
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < src_.size() &&
          (src_[exp_end] == '+' || src_[exp_end] == '-'))
        ++exp_end;
      if (exp_end < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
        while (exp_end < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[exp_end])))
          ++exp_end;
        end = exp_end;
      }
      // A bare 'e' after the digits is left for the identifier lexer; it
      // will surface as trailing garbage, which is what "2e" deserves.
    }
    double value = 0.0;
    const auto res =
        std::from_chars(src_.data() + start, src_.data() + end, value);
    if (res.ec != std::errc() || !std::isfinite(value))
      fail(start, "a representable number literal",
           std::string(src_.substr(start, end - start)));
    current_.type = Token::Type::number;
    current_.text = src_.substr(start, end - start);
    current_.value = value;
    pos_ = end;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

ExprNodePtr make_node(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

class Parser {
 public:
  Parser(std::string_view src, VarSet vars) : lex_(src), vars_(vars) {}

  ExprNodePtr parse_all() {
    ExprNodePtr e = parse_expr(0);
    const Token& t = lex_.peek();
    if (t.type != Token::Type::end)
      fail(t.offset, "end of input or a binary operator", describe(t));
    return e;
  }

 private:
  static constexpr int kMaxDepth = 200;

  void check_depth(int depth, std::size_t offset) {
    if (depth > kMaxDepth)
      fail(offset, "a less deeply nested expression", "nesting limit");
  }

  ExprNodePtr parse_expr(int depth) {
    check_depth(depth, lex_.peek().offset);
    ExprNodePtr lhs = parse_term(depth + 1);
    while (lex_.peek().type == Token::Type::op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      Token op = lex_.take();
      ExprNodePtr rhs = parse_term(depth + 1);
      ExprNode n;
      n.kind = ExprNode::Kind::binary;
      n.offset = op.offset;
      n.op = op.text[0];
      n.lhs = std::move(lhs);
      n.rhs = std::move(rhs);
      lhs = make_node(std::move(n));
    }
    return lhs;
  }

  ExprNodePtr parse_term(int depth) {
    check_depth(depth, lex_.peek().offset);
    ExprNodePtr lhs = parse_unary(depth + 1);
    while (lex_.peek().type == Token::Type::op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.take();
      ExprNodePtr rhs = parse_unary(depth + 1);
      ExprNode n;
      n.kind = ExprNode::Kind::binary;
      n.offset = op.offset;
      n.op = op.text[0];
      n.lhs = std::move(lhs);
      n.rhs = std::move(rhs);
      lhs = make_node(std::move(n));
    }
    return lhs;
  }

  ExprNodePtr parse_unary(int depth) {
    check_depth(depth, lex_.peek().offset);
    if (lex_.peek().type == Token::Type::op && lex_.peek().text == "-") {
      Token minus = lex_.take();
      ExprNode n;
      n.kind = ExprNode::Kind::negate;
      n.offset = minus.offset;
      n.lhs = parse_unary(depth + 1);
      return make_node(std::move(n));
    }
    return parse_power(depth + 1);
  }

  ExprNodePtr parse_power(int depth) {
    check_depth(depth, lex_.peek().offset);
    ExprNodePtr base = parse_atom(depth + 1);
    if (lex_.peek().type == Token::Type::op && lex_.peek().text == "^") {
      Token caret = lex_.take();
      ExprNodePtr expo = parse_unary(depth + 1);  // right-associative
      ExprNode n;
      n.kind = ExprNode::Kind::binary;
      n.offset = caret.offset;
      n.op = '^';
      n.lhs = std::move(base);
      n.rhs = std::move(expo);
      return make_node(std::move(n));
    }
    return base;
  }

  ExprNodePtr parse_atom(int depth) {
    check_depth(depth, lex_.peek().offset);
    const Token t = lex_.peek();
    switch (t.type) {
      case Token::Type::number: {
        lex_.take();
        ExprNode n;
        n.kind = ExprNode::Kind::number;
        n.offset = t.offset;
        n.number = t.value;
        return make_node(std::move(n));
      }
      case Token::Type::lparen: {
        lex_.take();
        ExprNodePtr inner = parse_expr(depth + 1);
        const Token& close = lex_.peek();
        if (close.type != Token::Type::rparen)
          fail(close.offset, "')'", describe(close));
        lex_.take();
        return inner;
      }
      case Token::Type::ident:
        return parse_ident(depth);
      default:
        fail(t.offset, "an expression", describe(t));
    }
  }

  ExprNodePtr parse_ident(int depth) {
    Token name = lex_.take();
    if (auto fn = lookup_prim(name.text)) {
      const Token& open = lex_.peek();
      if (open.type != Token::Type::lparen)
        fail(open.offset, "'(' after function name", describe(open));
      lex_.take();
      ExprNodePtr arg = parse_expr(depth + 1);
      const Token& close = lex_.peek();
      if (close.type != Token::Type::rparen)
        fail(close.offset, "')'", describe(close));
      lex_.take();
      ExprNode n;
      n.kind = ExprNode::Kind::call;
      n.offset = name.offset;
      n.fn = *fn;
      n.lhs = std::move(arg);
      return make_node(std::move(n));
    }
    if (name.text == "pi" || name.text == "e") {
      ExprNode n;
      n.kind = ExprNode::Kind::constant;
      n.offset = name.offset;
      n.constant = name.text == "pi" ? 'p' : 'e';
      return make_node(std::move(n));
    }
    if ((name.text == "u" && vars_.u) || (name.text == "v" && vars_.v)) {
      ExprNode n;
      n.kind = ExprNode::Kind::variable;
      n.offset = name.offset;
      n.variable = name.text == "u" ? 0 : 1;
      return make_node(std::move(n));
    }
    fail(name.offset, "a declared variable, constant, or function name",
         std::string(name.text));
  }

  Lexer lex_;
  VarSet vars_;
};

void scan_vars(const ExprNode* n, bool& uses_u, bool& uses_v) {
  if (!n) return;
  if (n->kind == ExprNode::Kind::variable) {
    if (n->variable == 0) uses_u = true;
    if (n->variable == 1) uses_v = true;
  }
  scan_vars(n->lhs.get(), uses_u, uses_v);
  scan_vars(n->rhs.get(), uses_u, uses_v);
}

Jet2 eval_node(const ExprNode* n, const Jet2* u, const Jet2* v) {
  try {
    switch (n->kind) {
      case ExprNode::Kind::number:
        return Jet2::constant(n->number);
      case ExprNode::Kind::constant:
        return Jet2::constant(n->constant == 'p' ? std::numbers::pi
                                                 : std::numbers::e);
      case ExprNode::Kind::variable:
        if (n->variable == 0) {
          if (!u) throw DomainError("no binding supplied for variable u");
          return *u;
        }
        if (!v) throw DomainError("no binding supplied for variable v");
        return *v;
      case ExprNode::Kind::negate:
        return -eval_node(n->lhs.get(), u, v);
      case ExprNode::Kind::binary: {
        const Jet2 a = eval_node(n->lhs.get(), u, v);
        switch (n->op) {
          case '+':
            return a + eval_node(n->rhs.get(), u, v);
          case '-':
            return a - eval_node(n->rhs.get(), u, v);
          case '*':
            return a * eval_node(n->rhs.get(), u, v);
          case '/':
            return a / eval_node(n->rhs.get(), u, v);
          case '^': {
            // An integer literal exponent works for any base (repeated
            // squaring); everything else needs a positive base.
            const ExprNode* e = n->rhs.get();
            if (e->kind == ExprNode::Kind::number &&
                std::floor(e->number) == e->number &&
                std::fabs(e->number) <= 1e6)
              return pow_int(a, static_cast<long long>(e->number));
            return pow(a, eval_node(n->rhs.get(), u, v).val);
          }
          default:
            throw Error("corrupt expression node");
        }
      }
      case ExprNode::Kind::call: {
        const Jet2 a = eval_node(n->lhs.get(), u, v);
        switch (n->fn) {
          case PrimFn::sin:
            return sin(a);
          case PrimFn::cos:
            return cos(a);
          case PrimFn::tan:
            return tan(a);
          case PrimFn::exp:
            return exp(a);
          case PrimFn::log:
            return log(a);
          case PrimFn::sqrt:
            return sqrt(a);
          case PrimFn::sinh:
            return sinh(a);
          case PrimFn::cosh:
            return cosh(a);
        }
        throw Error("corrupt expression node");
      }
    }
    throw Error("corrupt expression node");
  } catch (DomainError& err) {
    // Attach the innermost failing node's offset, keep it on rethrow.
    if (!err.offset) err.offset = n->offset;
    throw;
  }
}

// Exponent subtrees of '^' with a non-literal exponent are evaluated for
// their value only; the grammar still type-checks them as expressions.

int node_precedence(const ExprNode* n) {
  switch (n->kind) {
    case ExprNode::Kind::binary:
      if (n->op == '+' || n->op == '-') return 1;
      if (n->op == '*' || n->op == '/') return 2;
      return 4;  // '^'
    case ExprNode::Kind::negate:
      return 3;
    default:
      return 5;
  }
}

void print_node(const ExprNode* n, std::string& out) {
  auto wrapped = [&out](const ExprNode* child, int min_prec) {
    if (node_precedence(child) < min_prec) {
      out += '(';
      print_node(child, out);
      out += ')';
    } else {
      print_node(child, out);
    }
  };
  switch (n->kind) {
    case ExprNode::Kind::number: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n->number);
      out += buf;
      return;
    }
    case ExprNode::Kind::constant:
      out += n->constant == 'p' ? "pi" : "e";
      return;
    case ExprNode::Kind::variable:
      out += n->variable == 0 ? 'u' : 'v';
      return;
    case ExprNode::Kind::negate:
      out += '-';
      wrapped(n->lhs.get(), 3);
      return;
    case ExprNode::Kind::binary:
      if (n->op == '+' || n->op == '-') {
        wrapped(n->lhs.get(), 1);
        out += n->op;
        wrapped(n->rhs.get(), 2);
      } else if (n->op == '*' || n->op == '/') {
        wrapped(n->lhs.get(), 2);
        out += n->op;
        wrapped(n->rhs.get(), 3);
      } else {  // '^': the base must be an atom, the exponent a unary
        wrapped(n->lhs.get(), 5);
        out += '^';
        wrapped(n->rhs.get(), 3);
      }
      return;
    case ExprNode::Kind::call:
      out += prim_name(n->fn);
      out += '(';
      print_node(n->lhs.get(), out);
      out += ')';
      return;
  }
}

bool nodes_equal(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::number:
      return a->number == b->number;
    case ExprNode::Kind::constant:
      return a->constant == b->constant;
    case ExprNode::Kind::variable:
      return a->variable == b->variable;
    case ExprNode::Kind::negate:
      return nodes_equal(a->lhs.get(), b->lhs.get());
    case ExprNode::Kind::binary:
      return a->op == b->op && nodes_equal(a->lhs.get(), b->lhs.get()) &&
             nodes_equal(a->rhs.get(), b->rhs.get());
    case ExprNode::Kind::call:
      return a->fn == b->fn && nodes_equal(a->lhs.get(), b->lhs.get());
  }
  return false;
}

}  // namespace

const char* prim_name(PrimFn f) {
  return kPrimNames[static_cast<std::size_t>(f)];
}

std::string ParseError::message() const {
  return "parse error at offset " + std::to_string(offset) + ": expected " +
         expected + ", found '" + found + "'";
}

ExprAst::ExprAst(ExprNodePtr root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {
  scan_vars(root_.get(), uses_u_, uses_v_);
}

std::variant<ExprAst, ParseError> parse(std::string_view source, VarSet vars) {
  try {
    Parser p(source, vars);
    return ExprAst(p.parse_all(), std::string(source));
  } catch (const ParseFailure& f) {
    return f.error;
  }
}

ExprAst parse_or_throw(std::string_view source, VarSet vars) {
  auto result = parse(source, vars);
  if (auto* err = std::get_if<ParseError>(&result))
    throw ConstructionError("invalid expression '" + std::string(source) +
                            "': " + err->message());
  return std::get<ExprAst>(std::move(result));
}

Jet2 eval_jet(const ExprAst& ast, const Jet2& u) {
  assert(ast.valid());
  return eval_node(ast.root(), &u, nullptr);
}

Jet2 eval_jet(const ExprAst& ast, const Jet2& u, const Jet2& v) {
  assert(ast.valid());
  return eval_node(ast.root(), &u, &v);
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  if (ast.valid()) print_node(ast.root(), out);
  return out;
}

bool structurally_equal(const ExprAst& a, const ExprAst& b) {
  return nodes_equal(a.root(), b.root());
}

}  // namespace rotsurf
