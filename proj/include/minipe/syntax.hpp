#pragma once

// Concrete syntax for programs and binding files.
//
//   program := fundef* "main" "=" expr ";"
//   fundef  := "fun" IDENT "(" params? ")" "=" expr ";"
//   expr    := "if" expr "then" expr "else" expr | binop-expr
//
// Binary operators, loosest first: ||  &&  (== < >)  (+ -)  (* /), all
// left-associative; unary ! binds tighter than any of them. Value literals
// ([..], (v,v), nothing, just(v), numbers, strings, booleans) parse to a
// single Const node. `just(e)` is the Just primitive unless its argument is
// itself a bare value literal; the printer writes `just((v))` for a Just
// primitive applied to a constant so both forms survive a round trip.
// `-` directly before an integer literal in operand position is its sign.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/errors.hpp"
#include "minipe/value.hpp"

namespace minipe {

namespace syntax {

enum class TokenKind { Int, Ident, String, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  bool newlineBefore;
};

inline bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

inline bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0, line = 1, col = 1;
  bool newline = true;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      newline = true;
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }

    Token tok{TokenKind::Punct, "", line, col, newline};
    newline = false;

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = TokenKind::Int;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (isIdentStart(c)) {
      std::size_t j = i;
      while (j < src.size() && isIdentChar(src[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      tok.kind = TokenKind::String;
      advance(1);
      for (;;) {
        if (i >= src.size()) throw ParseError(tok.line, tok.column, "unterminated string literal");
        char d = src[i];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\') {
          if (i + 1 >= src.size() || (src[i + 1] != '"' && src[i + 1] != '\\'))
            throw ParseError(line, col, "invalid escape in string literal");
          tok.text += src[i + 1];
          advance(2);
          continue;
        }
        tok.text += d;
        advance(1);
      }
    } else {
      static constexpr std::string_view twoChar[] = {"==", "&&", "||"};
      std::string_view op;
      for (std::string_view candidate : twoChar)
        if (src.substr(i, 2) == candidate) op = candidate;
      if (op.empty()) {
        static constexpr std::string_view oneChar = "()[],;=<>+-*/!";
        if (oneChar.find(c) == std::string_view::npos)
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        op = src.substr(i, 1);
      }
      tok.text = std::string(op);
      advance(op.size());
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back(Token{TokenKind::End, "", line, col, true});
  return tokens;
}

struct Builtin {
  std::string_view name;
  PrimOp op;
};

inline constexpr Builtin kBuiltins[] = {
    {"pair", PrimOp::Pair},   {"fst", PrimOp::Fst},           {"snd", PrimOp::Snd},
    {"cons", PrimOp::Cons},   {"head", PrimOp::Head},         {"tail", PrimOp::Tail},
    {"isnil", PrimOp::IsNil}, {"just", PrimOp::Just},         {"isnothing", PrimOp::IsNothing},
    {"fromjust", PrimOp::FromJust},
};

inline std::optional<PrimOp> builtinOp(std::string_view name) {
  for (const Builtin& b : kBuiltins)
    if (b.name == name) return b.op;
  return std::nullopt;
}

inline std::optional<std::string_view> builtinName(PrimOp op) {
  for (const Builtin& b : kBuiltins)
    if (b.op == op) return b.name;
  return std::nullopt;
}

inline bool isKeyword(std::string_view name) {
  static constexpr std::string_view keywords[] = {"fun",  "main",  "if",     "then",
                                                  "else", "true",  "false",  "nothing"};
  for (std::string_view k : keywords)
    if (k == name) return true;
  return builtinOp(name).has_value();
}

struct Infix {
  std::string_view symbol;
  PrimOp op;
  int precedence;
};

inline constexpr Infix kInfix[] = {
    {"||", PrimOp::Or, 1},    {"&&", PrimOp::And, 2}, {"==", PrimOp::Equal, 3},
    {"<", PrimOp::Lt, 3},     {">", PrimOp::Gt, 3},   {"+", PrimOp::Add, 4},
    {"-", PrimOp::Sub, 4},    {"*", PrimOp::Mul, 5},  {"/", PrimOp::Div, 5},
};

inline constexpr int kMaxPrecedence = 5;

inline const Infix* infixFor(PrimOp op) {
  for (const Infix& inf : kInfix)
    if (inf.op == op) return &inf;
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  Prog program() {
    std::vector<FDef> defs;
    while (isIdent("fun")) defs.push_back(fundef());
    expectIdent("main");
    expect("=");
    Expr main = expr();
    expect(";");
    if (peek().kind != TokenKind::End) fail(peek(), "expected end of input after main");
    return Prog{std::move(defs), std::move(main)};
  }

  ValueEnv bindings() {
    ValueEnv env;
    while (peek().kind != TokenKind::End) {
      std::string name = identifier("binding name");
      expect("=");
      Value v = valueLiteral();
      if (!env.insert(name, std::move(v))) throw DuplicateBindingError(name);
      if (isPunct(",")) {
        ++pos_;
      } else if (peek().kind != TokenKind::End && !peek().newlineBefore) {
        fail(peek(), "expected ',' or newline between bindings");
      }
    }
    return env;
  }

  Expr standaloneExpr() {
    Expr e = expr();
    if (peek().kind != TokenKind::End) fail(peek(), "unexpected trailing input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    std::string found = at.kind == TokenKind::End ? "end of input" : "'" + at.text + "'";
    throw ParseError(at.line, at.column, message + " (found " + found + ")");
  }

  bool isPunct(std::string_view p) const {
    return peek().kind == TokenKind::Punct && peek().text == p;
  }

  bool isIdent(std::string_view id) const {
    return peek().kind == TokenKind::Ident && peek().text == id;
  }

  void expect(std::string_view p) {
    if (!isPunct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    ++pos_;
  }

  void expectIdent(std::string_view id) {
    if (!isIdent(id)) fail(peek(), "expected '" + std::string(id) + "'");
    ++pos_;
  }

  std::string identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident || isKeyword(t.text)) fail(t, "expected " + std::string(what));
    ++pos_;
    return t.text;
  }

  FDef fundef() {
    expectIdent("fun");
    std::string name = identifier("function name");
    expect("(");
    std::vector<std::string> params;
    if (!isPunct(")")) {
      params.push_back(identifier("parameter name"));
      while (isPunct(",")) {
        ++pos_;
        params.push_back(identifier("parameter name"));
      }
    }
    expect(")");
    expect("=");
    Expr body = expr();
    expect(";");
    return FDef{std::move(name), std::move(params), std::move(body)};
  }

  Expr expr() {
    if (isIdent("if")) {
      ++pos_;
      Expr cond = expr();
      expectIdent("then");
      Expr thenBranch = expr();
      expectIdent("else");
      Expr elseBranch = expr();
      return Expr::ifThenElse(std::move(cond), std::move(thenBranch), std::move(elseBranch));
    }
    return binary(1);
  }

  const Infix* infixAt(int precedence) const {
    if (peek().kind != TokenKind::Punct) return nullptr;
    for (const Infix& inf : kInfix)
      if (inf.precedence == precedence && inf.symbol == peek().text) return &inf;
    return nullptr;
  }

  Expr binary(int precedence) {
    if (precedence > kMaxPrecedence) return unary();
    Expr lhs = binary(precedence + 1);
    while (const Infix* inf = infixAt(precedence)) {
      ++pos_;
      Expr rhs = binary(precedence + 1);
      lhs = Expr::prim(inf->op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr unary() {
    if (isPunct("!")) {
      ++pos_;
      return Expr::prim(PrimOp::Not, {unary()});
    }
    return atom();
  }

  std::vector<Expr> argList() {
    expect("(");
    std::vector<Expr> args;
    if (!isPunct(")")) {
      args.push_back(expr());
      while (isPunct(",")) {
        ++pos_;
        args.push_back(expr());
      }
    }
    expect(")");
    return args;
  }

  // Runs `attempt` and rewinds on ParseError.
  template <class F>
  auto tryParse(F attempt) -> std::optional<decltype(attempt())> {
    std::size_t saved = pos_;
    try {
      return attempt();
    } catch (const ParseError&) {
      pos_ = saved;
      return std::nullopt;
    }
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int:
      case TokenKind::String:
        return Expr::constant(valueLiteral());
      case TokenKind::Punct:
        if (t.text == "-" && peek(1).kind == TokenKind::Int) return Expr::constant(valueLiteral());
        if (t.text == "[") return Expr::constant(valueLiteral());
        if (t.text == "(") {
          ++pos_;
          auto pair = tryParse([&] {
            Value first = valueLiteral();
            expect(",");
            Value second = valueLiteral();
            expect(")");
            return Value::pair(std::move(first), std::move(second));
          });
          if (pair) return Expr::constant(std::move(*pair));
          Expr inner = expr();
          expect(")");
          return inner;
        }
        fail(t, "expected an expression");
      case TokenKind::Ident:
        break;
      case TokenKind::End:
        fail(t, "expected an expression");
    }

    if (t.text == "true" || t.text == "false" || t.text == "nothing")
      return Expr::constant(valueLiteral());

    if (t.text == "just" && peek(1).kind == TokenKind::Punct && peek(1).text == "(") {
      pos_ += 2;
      auto literal = tryParse([&] {
        Value inner = valueLiteral();
        expect(")");
        return inner;
      });
      if (literal) return Expr::constant(Value::just(std::move(*literal)));
      Expr inner = expr();
      expect(")");
      return Expr::prim(PrimOp::Just, {std::move(inner)});
    }

    if (auto op = builtinOp(t.text)) {
      ++pos_;
      std::vector<Expr> args = argList();
      if (args.size() != arity(*op))
        fail(t, t.text + " expects " + std::to_string(arity(*op)) + " argument(s)");
      return Expr::prim(*op, std::move(args));
    }

    std::string name = identifier("an expression");
    if (isPunct("(")) return Expr::apply(std::move(name), argList());
    return Expr::var(std::move(name));
  }

  Value intLiteral(bool negative) {
    const Token& t = peek();
    std::string digits = (negative ? "-" : "") + t.text;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      fail(t, "integer literal out of 64-bit range");
    ++pos_;
    return Value::integer(v);
  }

  Value valueLiteral() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int:
        return intLiteral(false);
      case TokenKind::String:
        ++pos_;
        return Value::string(t.text);
      case TokenKind::Ident:
        if (t.text == "true" || t.text == "false") {
          ++pos_;
          return Value::boolean(t.text == "true");
        }
        if (t.text == "nothing") {
          ++pos_;
          return Value::nothing();
        }
        if (t.text == "just") {
          ++pos_;
          expect("(");
          Value inner = valueLiteral();
          expect(")");
          return Value::just(std::move(inner));
        }
        break;
      case TokenKind::Punct:
        if (t.text == "-" && peek(1).kind == TokenKind::Int) {
          ++pos_;
          return intLiteral(true);
        }
        if (t.text == "[") {
          ++pos_;
          Value::List items;
          if (!isPunct("]")) {
            items.push_back(valueLiteral());
            while (isPunct(",")) {
              ++pos_;
              items.push_back(valueLiteral());
            }
          }
          expect("]");
          return Value::list(std::move(items));
        }
        if (t.text == "(") {
          ++pos_;
          Value first = valueLiteral();
          expect(",");
          Value second = valueLiteral();
          expect(")");
          return Value::pair(std::move(first), std::move(second));
        }
        break;
      case TokenKind::End:
        break;
    }
    fail(t, "expected a value literal");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

enum class Slot { Top, Left, Right, Operand };

inline bool isNegativeInt(const Expr& e) {
  const Value* v = e.ifConst();
  return v && v->ifInt() && *v->ifInt() < 0;
}

inline void writeExpr(std::ostream& os, const Expr& e, Slot slot = Slot::Top, int context = 0);

inline void writeArgs(std::ostream& os, const std::vector<Expr>& args) {
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    writeExpr(os, args[i]);
  }
  os << ')';
}

// `context` is the precedence of the enclosing infix operator for Left/Right.
inline void writeExpr(std::ostream& os, const Expr& e, Slot slot, int context) {
  auto parenthesize = [&](bool needed, auto&& body) {
    if (needed) os << '(';
    body();
    if (needed) os << ')';
  };

  std::visit(
      [&](const auto& node) {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          parenthesize(slot != Slot::Top && isNegativeInt(e), [&] { os << node.value; });
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          os << node.name;
        } else if constexpr (std::is_same_v<Node, ApplyExpr>) {
          os << node.fname;
          writeArgs(os, node.args);
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          parenthesize(slot != Slot::Top, [&] {
            os << "if ";
            writeExpr(os, node.cond);
            os << " then ";
            writeExpr(os, node.thenBranch);
            os << " else ";
            writeExpr(os, node.elseBranch);
          });
        } else {
          if (const Infix* inf = infixFor(node.op)) {
            bool needed = slot == Slot::Operand || (slot == Slot::Left && inf->precedence < context) ||
                          (slot == Slot::Right && inf->precedence <= context);
            parenthesize(needed, [&] {
              writeExpr(os, node.args[0], Slot::Left, inf->precedence);
              os << inf->symbol;
              writeExpr(os, node.args[1], Slot::Right, inf->precedence);
            });
          } else if (node.op == PrimOp::Not) {
            os << '!';
            writeExpr(os, node.args[0], Slot::Operand);
          } else if (node.op == PrimOp::Just && node.args[0].ifConst()) {
            os << "just((";
            writeExpr(os, node.args[0]);
            os << "))";
          } else {
            os << *builtinName(node.op);
            writeArgs(os, node.args);
          }
        }
      },
      e.node().v);
}

}  // namespace syntax

// Throws ParseError on malformed text and ValidationError when the parsed
// program is not well formed.
inline Prog parseProgram(std::string_view text) {
  Prog p = syntax::Parser(text).program();
  validate(p);
  return p;
}

inline Expr parseExpr(std::string_view text) { return syntax::Parser(text).standaloneExpr(); }

// `name = literal` entries separated by commas and/or newlines.
inline ValueEnv parseBindings(std::string_view text) { return syntax::Parser(text).bindings(); }

inline std::string prettyExpr(const Expr& e) {
  std::ostringstream os;
  syntax::writeExpr(os, e);
  return os.str();
}

inline std::string prettyProgram(const Prog& p) {
  std::ostringstream os;
  for (const FDef& def : p.defs) {
    os << "fun " << def.name << '(';
    for (std::size_t i = 0; i < def.params.size(); ++i) os << (i ? "," : "") << def.params[i];
    os << ") = ";
    syntax::writeExpr(os, def.body);
    os << ";\n";
  }
  os << "main = ";
  syntax::writeExpr(os, p.main);
  os << ";\n";
  return os.str();
}

inline std::string prettyBindings(const ValueEnv& env) {
  std::ostringstream os;
  for (const auto& [name, value] : env) os << name << " = " << value << '\n';
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Expr& e) {
  syntax::writeExpr(os, e);
  return os;
}

}  // namespace minipe
