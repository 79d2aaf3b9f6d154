#pragma once

// Inlining-oriented partial evaluation: every application is unfolded, so
// residuals are plain expressions. Diverges (runs out of fuel) whenever a
// recursive call is guarded by a dynamic condition.

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/fuel.hpp"
#include "minipe/interpreter.hpp"

namespace minipe {

namespace detail {

// Folds a primitive whose arguments are all constants. A failing primitive
// is left in place so the error surfaces in the residual program, at the
// point where evaluation would have raised it.
inline Expr foldPrim(PrimOp op, std::vector<Expr> args) {
  std::vector<Value> values;
  values.reserve(args.size());
  for (const Expr& arg : args) {
    const Value* v = arg.ifConst();
    if (!v) return Expr::prim(op, std::move(args));
    values.push_back(*v);
  }
  PrimResult r = applyPrim(op, values);
  if (auto v = std::get_if<Value>(&r)) return Expr::constant(std::move(*v));
  return Expr::prim(op, std::move(args));
}

}  // namespace detail

// Variables bound in env are replaced by their bound expression verbatim.
// Spliced expressions are never looked up again, which is why unfolding
// needs no renaming: a callee's formals cannot capture a caller's names.
inline Expr pevalNaiveExpr(const Expr& e, const ExprEnv& env, std::span<const FDef> defs, Fuel& fuel) {
  return std::visit(
      [&](const auto& node) -> Expr {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          return e;
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          if (const Expr* bound = lookupVar(env, node.name)) return *bound;
          return e;
        } else if constexpr (std::is_same_v<Node, PrimExpr>) {
          std::vector<Expr> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(pevalNaiveExpr(arg, env, defs, fuel));
          return detail::foldPrim(node.op, std::move(args));
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          Expr cond = pevalNaiveExpr(node.cond, env, defs, fuel);
          if (const Value* v = cond.ifConst(); v && v->ifBool())
            return pevalNaiveExpr(*v->ifBool() ? node.thenBranch : node.elseBranch, env, defs, fuel);
          Expr thenBranch = pevalNaiveExpr(node.thenBranch, env, defs, fuel);
          Expr elseBranch = pevalNaiveExpr(node.elseBranch, env, defs, fuel);
          return Expr::ifThenElse(std::move(cond), std::move(thenBranch), std::move(elseBranch));
        } else {
          const FDef* def = lookupFDef(defs, node.fname);
          if (!def || def->params.size() != node.args.size())
            throw ValidationError("ill-formed call to '" + node.fname + "'");
          ExprEnv callEnv;
          for (std::size_t i = 0; i < node.args.size(); ++i)
            callEnv.insert(def->params[i], pevalNaiveExpr(node.args[i], env, defs, fuel));
          auto nesting = fuel.enter();
          return pevalNaiveExpr(def->body, callEnv, defs, fuel);
        }
      },
      e.node().v);
}

inline OrFuelExhausted<Expr> pevalNaive(const Prog& p, const ValueEnv& staticEnv, Fuel fuel) {
  ExprEnv env;
  for (const auto& [name, value] : staticEnv) env.insert(name, Expr::constant(value));
  try {
    return pevalNaiveExpr(p.main, env, p.defs, fuel);
  } catch (const detail::OutOfFuel&) {
    return FuelExhausted{};
  }
}

inline OrFuelExhausted<Expr> pevalNaive(const Prog& p, const ValueEnv& staticEnv = {},
                                        std::size_t fuel = kDefaultFuel) {
  return pevalNaive(p, staticEnv, Fuel(fuel));
}

}  // namespace minipe
