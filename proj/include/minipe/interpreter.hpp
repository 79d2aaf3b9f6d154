#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/fuel.hpp"
#include "minipe/value.hpp"

namespace minipe {

enum class ErrorKind {
  UnboundVariable,
  UnknownFunction,
  ArityMismatch,
  TypeError,
  DivByZero,
  HeadOfNil,
  FromJustNothing,
  Overflow
};

inline constexpr std::string_view errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::HeadOfNil: return "HeadOfNil";
    case ErrorKind::FromJustNothing: return "FromJustNothing";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "?";
}

struct RuntimeError {
  ErrorKind kind;
  std::string context;
};

// Result of running an object program: a value, a runtime error, or
// exhaustion of the application budget.
class EvalOutcome {
 public:
  EvalOutcome(Value v) : rep_(std::move(v)) {}
  EvalOutcome(RuntimeError e) : rep_(std::move(e)) {}
  EvalOutcome(FuelExhausted f) : rep_(f) {}

  bool ok() const { return rep_.index() == 0; }
  bool fuelExhausted() const { return rep_.index() == 2; }

  const Value* value() const { return std::get_if<Value>(&rep_); }
  const RuntimeError* error() const { return std::get_if<RuntimeError>(&rep_); }

 private:
  std::variant<Value, RuntimeError, FuelExhausted> rep_;
};

// Same variant, same value or same error kind. Error context text is ignored.
inline bool sameOutcome(const EvalOutcome& a, const EvalOutcome& b) {
  if (a.value() && b.value()) return valueEq(*a.value(), *b.value());
  if (a.error() && b.error()) return a.error()->kind == b.error()->kind;
  return a.fuelExhausted() && b.fuelExhausted();
}

inline std::ostream& operator<<(std::ostream& os, const EvalOutcome& outcome) {
  if (const Value* v = outcome.value()) return os << *v;
  if (const RuntimeError* e = outcome.error()) return os << errorKindName(e->kind);
  return os << "FuelExhausted";
}

using PrimResult = std::variant<Value, RuntimeError>;

namespace detail {

inline RuntimeError typeError(PrimOp op, std::string_view expected) {
  return {ErrorKind::TypeError, std::string(primName(op)) + " expects " + std::string(expected)};
}

inline PrimResult arithmetic(PrimOp op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case PrimOp::Add:
      overflow = __builtin_add_overflow(a, b, &r);
      break;
    case PrimOp::Sub:
      overflow = __builtin_sub_overflow(a, b, &r);
      break;
    case PrimOp::Mul:
      overflow = __builtin_mul_overflow(a, b, &r);
      break;
    case PrimOp::Div:
      if (b == 0) return RuntimeError{ErrorKind::DivByZero, std::to_string(a) + "/0"};
      if (a == INT64_MIN && b == -1) overflow = true;
      else r = a / b;
      break;
    case PrimOp::Lt:
      return Value::boolean(a < b);
    case PrimOp::Gt:
      return Value::boolean(a > b);
    default:
      break;
  }
  if (overflow)
    return RuntimeError{ErrorKind::Overflow, std::string(primName(op)) + " of " + std::to_string(a) +
                                                 " and " + std::to_string(b)};
  return Value::integer(r);
}

}  // namespace detail

// Integer division truncates toward zero.
inline PrimResult applyPrim(PrimOp op, std::span<const Value> args) {
  if (args.size() != arity(op))
    return RuntimeError{ErrorKind::ArityMismatch, std::string(primName(op))};
  const Value& a = args[0];
  switch (op) {
    case PrimOp::Equal:
      return Value::boolean(valueEq(a, args[1]));
    case PrimOp::Add:
    case PrimOp::Sub:
    case PrimOp::Mul:
    case PrimOp::Div:
    case PrimOp::Lt:
    case PrimOp::Gt:
      if (!a.ifInt() || !args[1].ifInt()) return detail::typeError(op, "integers");
      return detail::arithmetic(op, *a.ifInt(), *args[1].ifInt());
    case PrimOp::And:
    case PrimOp::Or:
      if (!a.ifBool() || !args[1].ifBool()) return detail::typeError(op, "booleans");
      return Value::boolean(op == PrimOp::And ? (*a.ifBool() && *args[1].ifBool())
                                              : (*a.ifBool() || *args[1].ifBool()));
    case PrimOp::Not:
      if (!a.ifBool()) return detail::typeError(op, "a boolean");
      return Value::boolean(!*a.ifBool());
    case PrimOp::Pair:
      return Value::pair(a, args[1]);
    case PrimOp::Fst:
    case PrimOp::Snd:
      if (!a.ifPair()) return detail::typeError(op, "a pair");
      return op == PrimOp::Fst ? a.ifPair()->first : a.ifPair()->second;
    case PrimOp::Cons: {
      const Value::List* tail = args[1].ifList();
      if (!tail) return detail::typeError(op, "a list as second argument");
      Value::List items;
      items.reserve(tail->size() + 1);
      items.push_back(a);
      items.insert(items.end(), tail->begin(), tail->end());
      return Value::list(std::move(items));
    }
    case PrimOp::Head:
    case PrimOp::Tail: {
      const Value::List* list = a.ifList();
      if (!list) return detail::typeError(op, "a list");
      if (list->empty()) return RuntimeError{ErrorKind::HeadOfNil, std::string(primName(op)) + " of []"};
      if (op == PrimOp::Head) return list->front();
      return Value::list(Value::List(list->begin() + 1, list->end()));
    }
    case PrimOp::IsNil:
      if (!a.ifList()) return detail::typeError(op, "a list");
      return Value::boolean(a.ifList()->empty());
    case PrimOp::Just:
      return Value::just(a);
    case PrimOp::IsNothing:
      if (!a.isNothing() && !a.ifJust()) return detail::typeError(op, "a maybe");
      return Value::boolean(a.isNothing());
    case PrimOp::FromJust:
      if (a.isNothing()) return RuntimeError{ErrorKind::FromJustNothing, "FromJust of nothing"};
      if (!a.ifJust()) return detail::typeError(op, "a maybe");
      return *a.ifJust();
  }
  return detail::typeError(op, "known operator");
}

namespace detail {

struct RuntimeFailure {
  RuntimeError error;
};

}  // namespace detail

// Big-step evaluation of one expression. Throws detail::RuntimeFailure or
// detail::OutOfFuel; use eval() for the non-throwing entry point.
inline Value evalExpr(const Expr& e, const ValueEnv& env, std::span<const FDef> defs, Fuel& fuel) {
  return std::visit(
      [&](const auto& node) -> Value {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          return node.value;
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          if (const Value* v = lookupVar(env, node.name)) return *v;
          throw detail::RuntimeFailure{{ErrorKind::UnboundVariable, node.name}};
        } else if constexpr (std::is_same_v<Node, PrimExpr>) {
          std::vector<Value> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(evalExpr(arg, env, defs, fuel));
          PrimResult r = applyPrim(node.op, args);
          if (auto err = std::get_if<RuntimeError>(&r)) throw detail::RuntimeFailure{std::move(*err)};
          return std::get<Value>(std::move(r));
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          Value cond = evalExpr(node.cond, env, defs, fuel);
          if (!cond.ifBool())
            throw detail::RuntimeFailure{{ErrorKind::TypeError, "if condition is not a boolean"}};
          return evalExpr(*cond.ifBool() ? node.thenBranch : node.elseBranch, env, defs, fuel);
        } else {
          const FDef* def = lookupFDef(defs, node.fname);
          if (!def) throw detail::RuntimeFailure{{ErrorKind::UnknownFunction, node.fname}};
          if (def->params.size() != node.args.size())
            throw detail::RuntimeFailure{{ErrorKind::ArityMismatch, node.fname}};
          ValueEnv callEnv;
          for (std::size_t i = 0; i < node.args.size(); ++i)
            callEnv.insert(def->params[i], evalExpr(node.args[i], env, defs, fuel));
          auto nesting = fuel.enter();
          return evalExpr(def->body, callEnv, defs, fuel);
        }
      },
      e.node().v);
}

// Evaluates p.main under env0. Fuel counts function applications.
inline EvalOutcome eval(const Prog& p, const ValueEnv& env0, Fuel fuel) {
  try {
    return evalExpr(p.main, env0, p.defs, fuel);
  } catch (const detail::RuntimeFailure& failure) {
    return failure.error;
  } catch (const detail::OutOfFuel&) {
    return FuelExhausted{};
  }
}

inline EvalOutcome eval(const Prog& p, const ValueEnv& env0 = {}, std::size_t fuel = kDefaultFuel) {
  return eval(p, env0, Fuel(fuel));
}

}  // namespace minipe
