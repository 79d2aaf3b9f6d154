#pragma once

// Post-specialization cleanup: unfold every call to a function that is not
// on a call-graph cycle, then drop definitions main no longer reaches.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minipe/ast.hpp"

namespace minipe {

namespace detail {

inline std::set<std::string> callees(const Expr& e) {
  std::set<std::string> out;
  forEachNode(e, [&](const Expr& n) {
    if (auto app = n.as<ApplyExpr>()) out.insert(app->fname);
  });
  return out;
}

// Strongly connected components of the call graph, callees before callers.
inline std::vector<std::vector<std::size_t>> callGraphComponents(const Prog& p,
                                                                 std::vector<std::set<std::size_t>>& edges) {
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < p.defs.size(); ++i) id.emplace(p.defs[i].name, i);
  edges.assign(p.defs.size(), {});
  for (std::size_t i = 0; i < p.defs.size(); ++i)
    for (const std::string& callee : callees(p.defs[i].body))
      if (auto it = id.find(callee); it != id.end()) edges[i].insert(it->second);

  // Tarjan; emits each component after all components it reaches.
  const std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(p.defs.size(), unvisited), low(p.defs.size(), 0);
  std::vector<bool> onStack(p.defs.size(), false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onStack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] == unvisited) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (onStack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        onStack[w] = false;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < p.defs.size(); ++v)
    if (index[v] == unvisited) connect(v);
  return components;
}

inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  return std::visit(
      [&](const auto& node) -> Expr {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr>) {
          return e;
        } else if constexpr (std::is_same_v<Node, VarExpr>) {
          auto it = bindings.find(node.name);
          return it == bindings.end() ? e : it->second;
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          return Expr::ifThenElse(substitute(node.cond, bindings), substitute(node.thenBranch, bindings),
                                  substitute(node.elseBranch, bindings));
        } else {
          std::vector<Expr> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(substitute(arg, bindings));
          if constexpr (std::is_same_v<Node, ApplyExpr>)
            return Expr::apply(node.fname, std::move(args));
          else
            return Expr::prim(node.op, std::move(args));
        }
      },
      e.node().v);
}

// Replaces each call to a function in `inlinable` with that function's
// (already inlined) body, arguments spliced verbatim for the parameters.
inline Expr inlineCalls(const Expr& e, const std::map<std::string, const FDef*>& inlinable) {
  return std::visit(
      [&](const auto& node) -> Expr {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, ConstExpr> || std::is_same_v<Node, VarExpr>) {
          return e;
        } else if constexpr (std::is_same_v<Node, IfExpr>) {
          return Expr::ifThenElse(inlineCalls(node.cond, inlinable), inlineCalls(node.thenBranch, inlinable),
                                  inlineCalls(node.elseBranch, inlinable));
        } else {
          std::vector<Expr> args;
          args.reserve(node.args.size());
          for (const Expr& arg : node.args) args.push_back(inlineCalls(arg, inlinable));
          if constexpr (std::is_same_v<Node, PrimExpr>) {
            return Expr::prim(node.op, std::move(args));
          } else {
            auto it = inlinable.find(node.fname);
            if (it == inlinable.end()) return Expr::apply(node.fname, std::move(args));
            const FDef& callee = *it->second;
            std::map<std::string, Expr> bindings;
            for (std::size_t i = 0; i < callee.params.size(); ++i) bindings.emplace(callee.params[i], args[i]);
            return substitute(callee.body, bindings);
          }
        }
      },
      e.node().v);
}

}  // namespace detail

// Names of functions not on any call-graph cycle (self-loops count as cycles).
inline std::set<std::string> callGraphNonRecursive(const Prog& p) {
  std::vector<std::set<std::size_t>> edges;
  std::set<std::string> out;
  for (const auto& component : detail::callGraphComponents(p, edges)) {
    std::size_t v = component.front();
    if (component.size() == 1 && !edges[v].count(v)) out.insert(p.defs[v].name);
  }
  return out;
}

// Unfolds all non-recursive functions in one sweep, callees first, and
// removes definitions unreachable from main. No size limit is applied.
inline Prog inlineResidual(const Prog& p) {
  std::vector<std::set<std::size_t>> edges;
  auto components = detail::callGraphComponents(p, edges);

  std::vector<FDef> rewritten = p.defs;
  std::map<std::string, const FDef*> inlinable;
  for (const auto& component : components) {
    for (std::size_t v : component)
      rewritten[v].body = detail::inlineCalls(rewritten[v].body, inlinable);
    std::size_t v = component.front();
    if (component.size() == 1 && !edges[v].count(v)) inlinable.emplace(rewritten[v].name, &rewritten[v]);
  }
  Expr main = detail::inlineCalls(p.main, inlinable);

  std::set<std::string> reachable;
  std::vector<std::string> work;
  for (const std::string& name : detail::callees(main)) work.push_back(name);
  while (!work.empty()) {
    std::string name = std::move(work.back());
    work.pop_back();
    if (!reachable.insert(name).second) continue;
    if (const FDef* def = lookupFDef(rewritten, name))
      for (const std::string& callee : detail::callees(def->body)) work.push_back(callee);
  }

  std::vector<FDef> kept;
  for (FDef& def : rewritten)
    if (reachable.count(def.name)) kept.push_back(std::move(def));
  return Prog{std::move(kept), std::move(main)};
}

}  // namespace minipe
