#pragma once

// File-level commands behind the command-line tool. Each returns the exit
// status and the text destined for stdout and stderr instead of printing,
// so they can be exercised directly.
//
// Exit status: 0 success, 1 runtime error (or a check mismatch), 2 fuel
// exhausted (or an inconclusive check), 3 unreadable, malformed or invalid
// input.

#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minipe/ast.hpp"
#include "minipe/dfa.hpp"
#include "minipe/errors.hpp"
#include "minipe/fuel.hpp"
#include "minipe/interpreter.hpp"
#include "minipe/naive_peval.hpp"
#include "minipe/postopt.hpp"
#include "minipe/specializer.hpp"
#include "minipe/syntax.hpp"

namespace minipe {

enum ExitStatus : int { kExitOk = 0, kExitRuntimeError = 1, kExitFuelExhausted = 2, kExitInputError = 3 };

struct CommandResult {
  int exitCode = kExitOk;
  std::string out;
  std::string err;
};

// Bindings given as `name=literal` strings and/or binding files.
struct BindingSources {
  std::vector<std::string> inlineBindings;
  std::vector<std::string> files;
};

struct RunOptions {
  std::string program;
  BindingSources env;
  std::size_t fuel = kDefaultFuel;
};

struct PevalOptions {
  std::string program;
  BindingSources statics;
  std::size_t fuel = kDefaultFuel;
  bool inlineResidual = true;  // ignored by peval-naive
  std::optional<std::string> output;
};

enum class DfaStyle { Naive, Bti };

struct CompileDfaOptions {
  std::string machine;
  DfaStyle style = DfaStyle::Bti;
  bool inlineResidual = true;
  std::size_t fuel = kDefaultFuel;
  bool sourceOnly = false;  // print the encoded interpreter, unspecialized
  std::optional<std::string> output;
};

struct CheckOptions {
  std::string program;
  BindingSources statics;
  BindingSources dynamics;
  std::size_t fuel = kDefaultFuel;
};

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write '" + path + "'");
}

inline Prog loadProgram(const std::string& path) {
  try {
    return parseProgram(readFile(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

// Merges all sources; a name bound twice anywhere is a DuplicateBindingError.
inline ValueEnv loadBindings(const BindingSources& sources) {
  ValueEnv env;
  auto merge = [&](const ValueEnv& part) {
    for (const auto& [name, value] : part)
      if (!env.insert(name, value)) throw DuplicateBindingError(name);
  };
  for (const std::string& path : sources.files) merge(parseBindings(readFile(path)));
  for (const std::string& binding : sources.inlineBindings) merge(parseBindings(binding));
  return env;
}

enum class CheckVerdict { Equal, Mismatch, Inconclusive };

struct CheckReport {
  CheckVerdict verdict;
  EvalOutcome original;
  std::optional<EvalOutcome> residual;  // absent when specialization ran out of fuel
  std::optional<EvalOutcome> inlined;
};

// Runs p on static ∪ dynamic, and the specialized program (plain and
// inlined) on dynamic alone, then compares the three outcomes. Any fuel
// exhaustion makes the verdict inconclusive.
inline CheckReport checkResidual(const Prog& p, const ValueEnv& statics, const ValueEnv& dynamics,
                                 std::size_t fuel = kDefaultFuel) {
  ValueEnv full = statics;
  for (const auto& [name, value] : dynamics)
    if (!full.insert(name, value)) throw ValidationError("'" + name + "' is both static and dynamic");

  EvalOutcome original = eval(p, full, fuel);
  auto specialized = peval(p, statics, fuel);
  if (std::holds_alternative<FuelExhausted>(specialized))
    return {CheckVerdict::Inconclusive, original, std::nullopt, std::nullopt};

  const Prog& residual = std::get<Prog>(specialized);
  EvalOutcome residualOutcome = eval(residual, dynamics, fuel);
  EvalOutcome inlinedOutcome = eval(inlineResidual(residual), dynamics, fuel);

  CheckVerdict verdict = CheckVerdict::Equal;
  if (original.fuelExhausted() || residualOutcome.fuelExhausted() || inlinedOutcome.fuelExhausted())
    verdict = CheckVerdict::Inconclusive;
  else if (!sameOutcome(original, residualOutcome) || !sameOutcome(original, inlinedOutcome))
    verdict = CheckVerdict::Mismatch;
  return {verdict, original, residualOutcome, inlinedOutcome};
}

namespace detail {

inline std::string warnExtraneous(const Prog& p, const ValueEnv& statics) {
  std::set<std::string> free = freeVars(p.main);
  std::string warnings;
  for (const auto& [name, value] : statics)
    if (!free.count(name)) warnings += "warning: '" + name + "' is not an input of main; binding ignored\n";
  return warnings;
}

inline ValueEnv restrictTo(const ValueEnv& env, const std::set<std::string>& names) {
  ValueEnv out;
  for (const auto& [name, value] : env)
    if (names.count(name)) out.insert(name, value);
  return out;
}

inline std::string outcomeText(const std::optional<EvalOutcome>& outcome) {
  if (!outcome) return "FuelExhausted (specialization)";
  std::ostringstream os;
  os << *outcome;
  return os.str();
}

// Maps input errors to exit status 3 with the message on stderr.
template <class Body>
CommandResult guarded(Body body) {
  try {
    return body();
  } catch (const Error& e) {
    return {kExitInputError, "", std::string("error: ") + e.what() + "\n"};
  }
}

inline CommandResult emit(const std::string& text, const std::optional<std::string>& output, std::string err = {}) {
  if (output) {
    writeFile(*output, text);
    return {kExitOk, "", std::move(err)};
  }
  return {kExitOk, text, std::move(err)};
}

}  // namespace detail

inline CommandResult cmdRun(const RunOptions& opts) {
  return detail::guarded([&]() -> CommandResult {
    Prog p = loadProgram(opts.program);
    EvalOutcome outcome = eval(p, loadBindings(opts.env), opts.fuel);
    std::ostringstream out;
    out << outcome << '\n';
    if (outcome.ok()) return {kExitOk, out.str(), ""};
    if (outcome.fuelExhausted()) return {kExitFuelExhausted, out.str(), "error: fuel exhausted\n"};
    const RuntimeError& e = *outcome.error();
    return {kExitRuntimeError, out.str(),
            "runtime error: " + std::string(errorKindName(e.kind)) + ": " + e.context + "\n"};
  });
}

inline CommandResult cmdPevalNaive(const PevalOptions& opts) {
  return detail::guarded([&]() -> CommandResult {
    Prog p = loadProgram(opts.program);
    ValueEnv statics = loadBindings(opts.statics);
    std::string warnings = detail::warnExtraneous(p, statics);
    auto result = pevalNaive(p, detail::restrictTo(statics, freeVars(p.main)), opts.fuel);
    if (std::holds_alternative<FuelExhausted>(result))
      return {kExitFuelExhausted, "FuelExhausted\n", warnings + "error: fuel exhausted while unfolding\n"};
    return detail::emit(prettyProgram(Prog{{}, std::get<Expr>(result)}), opts.output, warnings);
  });
}

inline CommandResult cmdPeval(const PevalOptions& opts) {
  return detail::guarded([&]() -> CommandResult {
    Prog p = loadProgram(opts.program);
    ValueEnv statics = loadBindings(opts.statics);
    std::string warnings = detail::warnExtraneous(p, statics);
    auto result = peval(p, detail::restrictTo(statics, freeVars(p.main)), opts.fuel);
    if (std::holds_alternative<FuelExhausted>(result))
      return {kExitFuelExhausted, "FuelExhausted\n", warnings + "error: fuel exhausted while specializing\n"};
    Prog residual = std::get<Prog>(std::move(result));
    if (opts.inlineResidual) residual = inlineResidual(residual);
    return detail::emit(prettyProgram(residual), opts.output, warnings);
  });
}

inline CommandResult cmdCompileDfa(const CompileDfaOptions& opts) {
  return detail::guarded([&]() -> CommandResult {
    Machine m = parseMachine(readFile(opts.machine));
    Prog encoded = opts.style == DfaStyle::Naive ? encodeDfaNaive(m) : encodeDfaBTI(m);
    if (opts.sourceOnly) return detail::emit(prettyProgram(encoded), opts.output);
    auto result = peval(encoded, {}, opts.fuel);
    if (std::holds_alternative<FuelExhausted>(result))
      return {kExitFuelExhausted, "FuelExhausted\n", "error: fuel exhausted while specializing\n"};
    Prog residual = std::get<Prog>(std::move(result));
    if (opts.inlineResidual) residual = inlineResidual(residual);
    std::string report = "-- specialized defs: " + std::to_string(residual.defs.size()) +
                         ", structured constants: " + std::to_string(countAggregateConstants(residual)) + "\n";
    if (opts.output) {
      writeFile(*opts.output, prettyProgram(residual));
      return {kExitOk, report, ""};
    }
    return {kExitOk, prettyProgram(residual) + report, ""};
  });
}

inline CommandResult cmdCheck(const CheckOptions& opts) {
  return detail::guarded([&]() -> CommandResult {
    Prog p = loadProgram(opts.program);
    ValueEnv statics = loadBindings(opts.statics);
    ValueEnv dynamics = loadBindings(opts.dynamics);
    for (const std::string& name : freeVars(p.main))
      if (!statics.contains(name) && !dynamics.contains(name))
        throw ValidationError("input '" + name + "' of main is neither static nor dynamic");
    std::string warnings = detail::warnExtraneous(p, statics);
    CheckReport report = checkResidual(p, detail::restrictTo(statics, freeVars(p.main)), dynamics, opts.fuel);

    std::ostringstream out;
    out << "original: " << report.original << '\n'
        << "residual: " << detail::outcomeText(report.residual) << '\n'
        << "inlined:  " << detail::outcomeText(report.inlined) << '\n';
    switch (report.verdict) {
      case CheckVerdict::Equal:
        out << "EQUAL\n";
        return {kExitOk, out.str(), warnings};
      case CheckVerdict::Mismatch:
        out << "MISMATCH\n";
        return {kExitRuntimeError, out.str(), warnings};
      case CheckVerdict::Inconclusive:
        out << "INCONCLUSIVE\n";
        return {kExitFuelExhausted, out.str(), warnings};
    }
    return {kExitRuntimeError, out.str(), warnings};
  });
}

}  // namespace minipe
