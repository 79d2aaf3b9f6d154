#pragma once

// Deterministic state machines as object programs: a direct interpreter
// (naive encoding), the same interpreter rewritten so the tables stay
// static under specialization, and a host-level reference simulator.
//
// Machine file format, one directive per line:
//
//   start: 1
//   accept: 2, 3          -- comma-separated, may be empty
//   from 1 --a--> 2       -- label: letters, digits, underscore
//
// Blank lines and lines starting with `--` are ignored. `start` and
// `accept` must each appear exactly once.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/errors.hpp"
#include "minipe/syntax.hpp"
#include "minipe/value.hpp"

namespace minipe {

struct Edge {
  std::string label;
  std::int64_t target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct StateEdges {
  std::int64_t state;
  std::vector<Edge> edges;

  friend bool operator==(const StateEdges&, const StateEdges&) = default;
};

struct Machine {
  std::vector<std::int64_t> acceptStates;
  std::vector<StateEdges> transitions;
  std::int64_t startState = 0;

  friend bool operator==(const Machine&, const Machine&) = default;
};

// Throws InvalidMachineError when a state lists two edges with one label,
// a state has two transition rows, an accept state repeats, or an edge
// targets a state that has neither a transition row nor accept status.
inline void validateMachine(const Machine& m) {
  std::set<std::int64_t> known(m.acceptStates.begin(), m.acceptStates.end());
  if (known.size() != m.acceptStates.size()) throw InvalidMachineError("accept state listed twice");
  std::set<std::int64_t> rows;
  for (const StateEdges& row : m.transitions) {
    if (!rows.insert(row.state).second)
      throw InvalidMachineError("state " + std::to_string(row.state) + " has two transition rows");
    known.insert(row.state);
    std::set<std::string> labels;
    for (const Edge& e : row.edges)
      if (!labels.insert(e.label).second)
        throw InvalidMachineError("state " + std::to_string(row.state) + " has two edges labelled '" +
                                  e.label + "'");
  }
  for (const StateEdges& row : m.transitions)
    for (const Edge& e : row.edges)
      if (!known.count(e.target))
        throw InvalidMachineError("edge " + std::to_string(row.state) + " --" + e.label + "--> " +
                                  std::to_string(e.target) + " targets an unknown state");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::int64_t parseStateId(std::string_view text, std::size_t line) {
  text = trim(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidMachineError("line " + std::to_string(line) + ": expected a state id, got '" +
                              std::string(text) + "'");
  return v;
}

}  // namespace detail

inline Machine parseMachine(std::string_view text) {
  Machine m;
  bool haveStart = false, haveAccept = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::string_view s = detail::trim(raw);
    if (s.empty() || s.starts_with("--")) continue;
    auto bad = [&](const std::string& why) {
      return InvalidMachineError("line " + std::to_string(line) + ": " + why);
    };
    if (s.starts_with("start:")) {
      if (haveStart) throw bad("duplicate start directive");
      m.startState = detail::parseStateId(s.substr(6), line);
      haveStart = true;
    } else if (s.starts_with("accept:")) {
      if (haveAccept) throw bad("duplicate accept directive");
      std::string_view rest = detail::trim(s.substr(7));
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        m.acceptStates.push_back(detail::parseStateId(rest.substr(0, comma), line));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (comma != std::string_view::npos && detail::trim(rest).empty()) throw bad("trailing comma");
      }
      haveAccept = true;
    } else if (s.starts_with("from ")) {
      std::size_t open = s.find("--");
      std::size_t arrow = s.find("-->", open == std::string_view::npos ? 0 : open + 2);
      if (open == std::string_view::npos || arrow == std::string_view::npos)
        throw bad("expected 'from <state> --<label>--> <state>'");
      std::int64_t from = detail::parseStateId(s.substr(5, open - 5), line);
      std::string label(s.substr(open + 2, arrow - open - 2));
      if (label.empty() || !std::all_of(label.begin(), label.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
          }))
        throw bad("invalid label '" + label + "'");
      std::int64_t to = detail::parseStateId(s.substr(arrow + 3), line);
      auto row = std::find_if(m.transitions.begin(), m.transitions.end(),
                              [&](const StateEdges& r) { return r.state == from; });
      if (row == m.transitions.end()) {
        m.transitions.push_back({from, {}});
        row = std::prev(m.transitions.end());
      }
      row->edges.push_back({std::move(label), to});
    } else {
      throw bad("unrecognised directive '" + std::string(s) + "'");
    }
  }
  if (!haveStart) throw InvalidMachineError("missing start directive");
  if (!haveAccept) throw InvalidMachineError("missing accept directive");
  validateMachine(m);
  return m;
}

inline std::string printMachine(const Machine& m) {
  std::ostringstream os;
  os << "start: " << m.startState << "\naccept: ";
  for (std::size_t i = 0; i < m.acceptStates.size(); ++i) os << (i ? ", " : "") << m.acceptStates[i];
  os << '\n';
  for (const StateEdges& row : m.transitions)
    for (const Edge& e : row.edges) os << "from " << row.state << " --" << e.label << "--> " << e.target << '\n';
  return os.str();
}

// Two states, state 2 accepting; a from 1 to 2, a from 2 back to 1, b loops on 2.
inline Machine exampleMachine() {
  return Machine{{2}, {{1, {{"a", 2}}}, {2, {{"a", 1}, {"b", 2}}}}, 1};
}

// Reference semantics: a missing transition rejects.
inline bool runMachineOracle(const Machine& m, const std::vector<std::string>& input) {
  std::int64_t current = m.startState;
  for (const std::string& label : input) {
    auto row = std::find_if(m.transitions.begin(), m.transitions.end(),
                            [&](const StateEdges& r) { return r.state == current; });
    if (row == m.transitions.end()) return false;
    auto edge = std::find_if(row->edges.begin(), row->edges.end(), [&](const Edge& e) { return e.label == label; });
    if (edge == row->edges.end()) return false;
    current = edge->target;
  }
  return std::find(m.acceptStates.begin(), m.acceptStates.end(), current) != m.acceptStates.end();
}

inline Value acceptValue(const Machine& m) {
  Value::List states;
  for (std::int64_t s : m.acceptStates) states.push_back(Value::integer(s));
  return Value::list(std::move(states));
}

// [(state, [(label, target), ...]), ...]
inline Value transitionValue(const Machine& m) {
  Value::List rows;
  for (const StateEdges& row : m.transitions) {
    Value::List edges;
    for (const Edge& e : row.edges) edges.push_back(Value::pair(Value::string(e.label), Value::integer(e.target)));
    rows.push_back(Value::pair(Value::integer(row.state), Value::list(std::move(edges))));
  }
  return Value::list(std::move(rows));
}

inline Value inputValue(const std::vector<std::string>& input) {
  Value::List labels;
  for (const std::string& label : input) labels.push_back(Value::string(label));
  return Value::list(std::move(labels));
}

namespace detail {

inline constexpr std::string_view kElemSource =
    "fun elem(x,xs) = if isnil(xs) then false else if head(xs)==x then true else elem(x,tail(xs));\n";

inline constexpr std::string_view kNaiveSource =
    "fun lookup(key,table) = if isnil(table) then nothing"
    " else if fst(head(table))==key then just(snd(head(table))) else lookup(key,tail(table));\n"
    "fun run(current,accept,trans,input) = if isnil(input) then elem(current,accept)"
    " else if isnothing(lookup(current,trans)) then false"
    " else if isnothing(lookup(head(input),fromjust(lookup(current,trans)))) then false"
    " else run(fromjust(lookup(head(input),fromjust(lookup(current,trans)))),accept,trans,tail(input));\n";

inline constexpr std::string_view kBtiSource =
    "fun run(current,accept,trans,input) = if isnil(input) then elem(current,accept)"
    " else findState(trans,current,accept,trans,input);\n"
    "fun findState(tbl,current,accept,trans,input) = if isnil(tbl) then false"
    " else if fst(head(tbl))==current then findEdge(snd(head(tbl)),head(input),accept,trans,tail(input))"
    " else findState(tail(tbl),current,accept,trans,input);\n"
    "fun findEdge(edges,label,accept,trans,rest) = if isnil(edges) then false"
    " else if fst(head(edges))==label then run(snd(head(edges)),accept,trans,rest)"
    " else findEdge(tail(edges),label,accept,trans,rest);\n";

inline Prog encodeWith(std::string_view defsSource, const Machine& m) {
  validateMachine(m);
  std::string source = std::string(defsSource) + std::string(kElemSource) + "main = 0;\n";
  Prog p = parseProgram(source);
  p.main = Expr::apply("run", {Expr::constant(Value::integer(m.startState)), Expr::constant(acceptValue(m)),
                               Expr::constant(transitionValue(m)), Expr::var("input")});
  validate(p);
  return p;
}

}  // namespace detail

// The interpreter as one would first write it: look up the current state's
// row, then the edge for the next label. Under specialization `current`
// becomes dynamic after one step and the tables stay in the residual.
inline Prog encodeDfaNaive(const Machine& m) { return detail::encodeWith(detail::kNaiveSource, m); }

// Binding-time-improved interpreter: walk the static table comparing each
// key to the dynamic one, so the matched row and target remain static.
inline Prog encodeDfaBTI(const Machine& m) { return detail::encodeWith(detail::kBtiSource, m); }

}  // namespace minipe
