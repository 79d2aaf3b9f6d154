#pragma once

// Online polyvariant program specialization.
//
// Applications with at least one non-constant argument are replaced by a
// call to a specialized copy of the callee, one copy per distinct
// assignment of constant arguments. Copies are memoized in a SpecStore; an
// entry is registered with a pending body before that body is computed, so
// a recursive call that reaches the same assignment ties back to the entry
// instead of unfolding forever. Applications whose arguments are all
// constant are unfolded in place.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/fuel.hpp"
#include "minipe/interpreter.hpp"
#include "minipe/naive_peval.hpp"

namespace minipe {

struct StaticBinding {
  std::string param;
  Value value;

  friend bool operator==(const StaticBinding&, const StaticBinding&) = default;
};

// Ordered by the callee's parameter order.
using StaticBindings = std::vector<StaticBinding>;

struct SpecKey {
  std::string function;
  StaticBindings statics;

  friend bool operator==(const SpecKey&, const SpecKey&) = default;
};

struct SpecKeyHash {
  std::size_t operator()(const SpecKey& key) const {
    std::size_t seed = std::hash<std::string>{}(key.function);
    for (const StaticBinding& b : key.statics) {
      seed = hashCombine(seed, std::hash<std::string>{}(b.param));
      seed = hashCombine(seed, hashValue(b.value));
    }
    return seed;
  }
};

struct SpecEntry {
  SpecKey key;
  std::string name;
  std::vector<std::string> params;
  std::optional<Expr> body;  // empty while the specialization is in progress
};

// Insertion-ordered table of specializations for one run.
class SpecStore {
 public:
  // `reserved` are names a fabricated name must never take (the original
  // program's functions).
  explicit SpecStore(std::vector<std::string> reserved = {}) {
    for (std::string& name : reserved) used_.insert(std::move(name));
  }

  const SpecEntry* find(const SpecKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  // origName + "_" + k for the k-th specialization of origName, with "_"
  // appended until the name is unused.
  std::string fabricateName(const std::string& origName) {
    std::size_t k = ++counters_[origName];
    std::string name = origName + "_" + std::to_string(k);
    while (used_.count(name)) name += "_";
    used_.insert(name);
    return name;
  }

  std::size_t insertPending(SpecKey key, std::string name, std::vector<std::string> params) {
    if (index_.count(key)) throw std::logic_error("specialization registered twice");
    std::size_t slot = entries_.size();
    index_.emplace(key, slot);
    entries_.push_back(SpecEntry{std::move(key), std::move(name), std::move(params), std::nullopt});
    return slot;
  }

  void complete(std::size_t slot, Expr body) { entries_.at(slot).body = std::move(body); }

  std::span<const SpecEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool hasPending() const {
    for (const SpecEntry& e : entries_)
      if (!e.body) return true;
    return false;
  }

  // Throws std::logic_error if any body is still pending.
  std::vector<FDef> toDefs() const {
    std::vector<FDef> defs;
    defs.reserve(entries_.size());
    for (const SpecEntry& e : entries_) {
      if (!e.body) throw std::logic_error("specialization '" + e.name + "' has no body");
      defs.push_back(FDef{e.name, e.params, *e.body});
    }
    return defs;
  }

 private:
  std::vector<SpecEntry> entries_;
  std::unordered_map<SpecKey, std::size_t, SpecKeyHash> index_;
  std::unordered_map<std::string, std::size_t> counters_;
  std::unordered_set<std::string> used_;
};

inline std::string specName(const std::string& origName, SpecStore& store) {
  return store.fabricateName(origName);
}

struct PartitionedArgs {
  StaticBindings statics;
  std::vector<std::string> dynParams;
  std::vector<Expr> dynArgs;
};

// A position is static exactly when its residual argument is a constant.
inline PartitionedArgs partitionArgs(std::span<const std::string> params, std::span<const Expr> argResiduals) {
  if (params.size() != argResiduals.size()) throw std::invalid_argument("partitionArgs: length mismatch");
  PartitionedArgs out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (const Value* v = argResiduals[i].ifConst()) {
      out.statics.push_back({params[i], *v});
    } else {
      out.dynParams.push_back(params[i]);
      out.dynArgs.push_back(argResiduals[i]);
    }
  }
  return out;
}

inline Expr specializeApply(const std::string& fname, std::vector<Expr> argResiduals, SpecStore& store,
                            std::span<const FDef> defs, Fuel& fuel);

// Store effects happen left to right in source order: arguments in order,
// then-branch before else-branch.
inline Expr pevalExpr(const Expr& e, const ValueEnv& env, SpecStore& store, std::span<const FDef> defs,
                      Fuel& fuel) {
  return std::visit(
      [&](const auto& node) -> Expr {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          return e;
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          if (const Value* v = lookupVar(env, node.name)) return Expr::constant(*v);
          return e;
        } else if constexpr (std::is_same_v<Node, PrimExpr>) {
          std::vector<Expr> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(pevalExpr(arg, env, store, defs, fuel));
          return detail::foldPrim(node.op, std::move(args));
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          Expr cond = pevalExpr(node.cond, env, store, defs, fuel);
          if (const Value* v = cond.ifConst(); v && v->ifBool())
            return pevalExpr(*v->ifBool() ? node.thenBranch : node.elseBranch, env, store, defs, fuel);
          Expr thenBranch = pevalExpr(node.thenBranch, env, store, defs, fuel);
          Expr elseBranch = pevalExpr(node.elseBranch, env, store, defs, fuel);
          return Expr::ifThenElse(std::move(cond), std::move(thenBranch), std::move(elseBranch));
        } else {
          std::vector<Expr> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(pevalExpr(arg, env, store, defs, fuel));
          return specializeApply(node.fname, std::move(args), store, defs, fuel);
        }
      },
      e.node().v);
}

inline Expr specializeApply(const std::string& fname, std::vector<Expr> argResiduals, SpecStore& store,
                            std::span<const FDef> defs, Fuel& fuel) {
  const FDef* def = lookupFDef(defs, fname);
  if (!def || def->params.size() != argResiduals.size())
    throw ValidationError("ill-formed call to '" + fname + "'");

  PartitionedArgs parts = partitionArgs(def->params, argResiduals);
  ValueEnv staticEnv;
  for (const StaticBinding& b : parts.statics) staticEnv.insert(b.param, b.value);

  if (parts.dynArgs.empty()) {
    auto nesting = fuel.enter();
    return pevalExpr(def->body, staticEnv, store, defs, fuel);
  }

  SpecKey key{fname, std::move(parts.statics)};
  if (const SpecEntry* hit = store.find(key)) return Expr::apply(hit->name, std::move(parts.dynArgs));

  auto nesting = fuel.enter();
  std::string name = specName(fname, store);
  std::size_t slot = store.insertPending(std::move(key), name, std::move(parts.dynParams));
  Expr body = pevalExpr(def->body, staticEnv, store, defs, fuel);
  store.complete(slot, std::move(body));
  return Expr::apply(std::move(name), std::move(parts.dynArgs));
}

// Residual program whose definitions are the specializations in creation
// order. Fuel bounds specializations created plus all-static unfoldings.
inline OrFuelExhausted<Prog> peval(const Prog& p, const ValueEnv& staticEnv, Fuel fuel) {
  std::vector<std::string> reserved;
  for (const FDef& def : p.defs) reserved.push_back(def.name);
  SpecStore store(std::move(reserved));
  try {
    Expr main = pevalExpr(p.main, staticEnv, store, p.defs, fuel);
    return Prog{store.toDefs(), std::move(main)};
  } catch (const detail::OutOfFuel&) {
    return FuelExhausted{};
  }
}

inline OrFuelExhausted<Prog> peval(const Prog& p, const ValueEnv& staticEnv = {},
                                   std::size_t fuel = kDefaultFuel) {
  return peval(p, staticEnv, Fuel(fuel));
}

}  // namespace minipe
