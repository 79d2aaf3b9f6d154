#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "minipe/errors.hpp"
#include "minipe/value.hpp"

namespace minipe {

enum class PrimOp {
  Equal, Add, Sub, Mul, Div, Lt, Gt, And, Or, Not,
  Pair, Fst, Snd, Cons, Head, Tail, IsNil, Just, IsNothing, FromJust
};

inline constexpr std::size_t arity(PrimOp op) {
  switch (op) {
    case PrimOp::Not:
    case PrimOp::Fst:
    case PrimOp::Snd:
    case PrimOp::Head:
    case PrimOp::Tail:
    case PrimOp::IsNil:
    case PrimOp::Just:
    case PrimOp::IsNothing:
    case PrimOp::FromJust:
      return 1;
    default:
      return 2;
  }
}

inline constexpr std::string_view primName(PrimOp op) {
  switch (op) {
    case PrimOp::Equal: return "Equal";
    case PrimOp::Add: return "Add";
    case PrimOp::Sub: return "Sub";
    case PrimOp::Mul: return "Mul";
    case PrimOp::Div: return "Div";
    case PrimOp::Lt: return "Lt";
    case PrimOp::Gt: return "Gt";
    case PrimOp::And: return "And";
    case PrimOp::Or: return "Or";
    case PrimOp::Not: return "Not";
    case PrimOp::Pair: return "Pair";
    case PrimOp::Fst: return "Fst";
    case PrimOp::Snd: return "Snd";
    case PrimOp::Cons: return "Cons";
    case PrimOp::Head: return "Head";
    case PrimOp::Tail: return "Tail";
    case PrimOp::IsNil: return "IsNil";
    case PrimOp::Just: return "Just";
    case PrimOp::IsNothing: return "IsNothing";
    case PrimOp::FromJust: return "FromJust";
  }
  return "?";
}

struct ExprNode;

// Immutable expression tree handle. Subtrees are shared, never mutated.
class Expr {
 public:
  static Expr constant(Value v);
  static Expr var(std::string name);
  static Expr apply(std::string fname, std::vector<Expr> args);
  // Throws std::invalid_argument when args.size() != arity(op).
  static Expr prim(PrimOp op, std::vector<Expr> args);
  static Expr ifThenElse(Expr cond, Expr thenBranch, Expr elseBranch);

  const ExprNode& node() const { return *node_; }

  template <class Node>
  const Node* as() const;

  const Value* ifConst() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const ExprNode> node_;
};

struct ConstExpr {
  Value value;
};

struct VarExpr {
  std::string name;
};

struct ApplyExpr {
  std::string fname;
  std::vector<Expr> args;
};

struct PrimExpr {
  PrimOp op;
  std::vector<Expr> args;
};

struct IfExpr {
  Expr cond;
  Expr thenBranch;
  Expr elseBranch;
};

struct ExprNode {
  std::variant<ConstExpr, VarExpr, ApplyExpr, PrimExpr, IfExpr> v;
};

inline Expr Expr::constant(Value v) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstExpr{std::move(v)}}));
}

inline Expr Expr::var(std::string name) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VarExpr{std::move(name)}}));
}

inline Expr Expr::apply(std::string fname, std::vector<Expr> args) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ApplyExpr{std::move(fname), std::move(args)}}));
}

inline Expr Expr::prim(PrimOp op, std::vector<Expr> args) {
  if (args.size() != arity(op))
    throw std::invalid_argument(std::string(primName(op)) + " expects " + std::to_string(arity(op)) +
                                " argument(s), got " + std::to_string(args.size()));
  return Expr(std::make_shared<const ExprNode>(ExprNode{PrimExpr{op, std::move(args)}}));
}

inline Expr Expr::ifThenElse(Expr cond, Expr thenBranch, Expr elseBranch) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{IfExpr{std::move(cond), std::move(thenBranch), std::move(elseBranch)}}));
}

template <class Node>
const Node* Expr::as() const {
  return std::get_if<Node>(&node_->v);
}

inline const Value* Expr::ifConst() const {
  auto c = as<ConstExpr>();
  return c ? &c->value : nullptr;
}

inline bool operator==(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using Node = std::decay_t<decltype(lhs)>;
        const Node* rhs = b.as<Node>();
        if (!rhs) return false;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          return valueEq(lhs.value, rhs->value);
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          return lhs.name == rhs->name;
        } else if constexpr (std::is_same_v<Node, ApplyExpr>) {
          return lhs.fname == rhs->fname && lhs.args == rhs->args;
        } else if constexpr (std::is_same_v<Node, PrimExpr>) {
          return lhs.op == rhs->op && lhs.args == rhs->args;
        } else {
          return lhs.cond == rhs->cond && lhs.thenBranch == rhs->thenBranch &&
                 lhs.elseBranch == rhs->elseBranch;
        }
      },
      a.node().v);
}

struct FDef {
  std::string name;
  std::vector<std::string> params;
  Expr body;

  friend bool operator==(const FDef&, const FDef&) = default;
};

struct Prog {
  std::vector<FDef> defs;
  Expr main;

  friend bool operator==(const Prog&, const Prog&) = default;
};

// Ordered name -> binding map without duplicate keys. Lookup is first-match.
template <class Binding>
class Env {
 public:
  using Entry = std::pair<std::string, Binding>;

  Env() = default;

  // Throws DuplicateBindingError on a repeated name.
  Env(std::initializer_list<Entry> entries) {
    for (const auto& [name, binding] : entries)
      if (!insert(name, binding)) throw DuplicateBindingError(name);
  }

  // Returns false, leaving the map unchanged, if the name is already bound.
  bool insert(std::string name, Binding binding) {
    if (lookup(name)) return false;
    entries_.emplace_back(std::move(name), std::move(binding));
    return true;
  }

  const Binding* lookup(std::string_view name) const {
    for (const auto& entry : entries_)
      if (entry.first == name) return &entry.second;
    return nullptr;
  }

  bool contains(std::string_view name) const { return lookup(name) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<Entry> entries_;
};

using ValueEnv = Env<Value>;
using ExprEnv = Env<Expr>;

template <class Binding>
const Binding* lookupVar(const Env<Binding>& env, std::string_view name) {
  return env.lookup(name);
}

inline const FDef* lookupFDef(std::span<const FDef> defs, std::string_view name) {
  for (const FDef& def : defs)
    if (def.name == name) return &def;
  return nullptr;
}

namespace detail {

inline void collectFreeVars(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, VarExpr>) {
          out.insert(node.name);
        } else if constexpr (std::is_same_v<Node, ApplyExpr> || std::is_same_v<Node, PrimExpr>) {
          for (const Expr& arg : node.args) collectFreeVars(arg, out);
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          collectFreeVars(node.cond, out);
          collectFreeVars(node.thenBranch, out);
          collectFreeVars(node.elseBranch, out);
        }
      },
      e.node().v);
}

}  // namespace detail

// Every Var name in e. The language has no binders inside expressions,
// so all of them are free.
inline std::set<std::string> freeVars(const Expr& e) {
  std::set<std::string> out;
  detail::collectFreeVars(e, out);
  return out;
}

// Calls `visit` on every node of e in pre-order.
template <class Visitor>
void forEachNode(const Expr& e, Visitor&& visit) {
  visit(e);
  std::visit(
      [&](const auto& node) {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ApplyExpr> || std::is_same_v<Node, PrimExpr>) {
          for (const Expr& arg : node.args) forEachNode(arg, visit);
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          forEachNode(node.cond, visit);
          forEachNode(node.thenBranch, visit);
          forEachNode(node.elseBranch, visit);
        }
      },
      e.node().v);
}

inline bool containsApply(const Expr& e) {
  bool found = false;
  forEachNode(e, [&](const Expr& n) { found = found || n.as<ApplyExpr>() != nullptr; });
  return found;
}

// Number of Const nodes whose value holds a list or a pair anywhere inside.
inline std::size_t countAggregateConstants(const Expr& e) {
  std::size_t count = 0;
  forEachNode(e, [&](const Expr& n) {
    if (const Value* v = n.ifConst(); v && v->containsAggregate()) ++count;
  });
  return count;
}

inline std::size_t countAggregateConstants(const Prog& p) {
  std::size_t count = countAggregateConstants(p.main);
  for (const FDef& def : p.defs) count += countAggregateConstants(def.body);
  return count;
}

namespace detail {

inline void validateCalls(const Expr& e, std::span<const FDef> defs, const std::string& where) {
  forEachNode(e, [&](const Expr& n) {
    if (auto app = n.as<ApplyExpr>()) {
      const FDef* callee = lookupFDef(defs, app->fname);
      if (!callee) throw ValidationError(where + ": call to unknown function '" + app->fname + "'");
      if (callee->params.size() != app->args.size())
        throw ValidationError(where + ": '" + app->fname + "' expects " +
                              std::to_string(callee->params.size()) + " argument(s), got " +
                              std::to_string(app->args.size()));
    }
  });
}

}  // namespace detail

// Checks name uniqueness, distinct parameters, closed bodies and call
// arity. The main expression may have free variables (program inputs).
inline void validate(const Prog& p) {
  std::set<std::string> names;
  for (const FDef& def : p.defs) {
    if (!names.insert(def.name).second)
      throw ValidationError("function '" + def.name + "' is defined more than once");
    std::set<std::string> params(def.params.begin(), def.params.end());
    if (params.size() != def.params.size())
      throw ValidationError("function '" + def.name + "' has repeated parameter names");
    for (const std::string& v : freeVars(def.body))
      if (!params.count(v))
        throw ValidationError("function '" + def.name + "': unbound variable '" + v + "'");
  }
  for (const FDef& def : p.defs) detail::validateCalls(def.body, p.defs, "function '" + def.name + "'");
  detail::validateCalls(p.main, p.defs, "main");
}

}  // namespace minipe
