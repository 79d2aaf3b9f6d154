#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minipe/commands.hpp"

namespace {

void addStatics(CLI::App& cmd, minipe::BindingSources& sources) {
  cmd.add_option("--static", sources.inlineBindings, "Static binding name=literal (repeatable)");
  cmd.add_option("--env-file", sources.files, "File of static bindings (repeatable)")->check(CLI::ExistingFile);
}

int report(const minipe::CommandResult& result) {
  std::cout << result.out << std::flush;
  std::cerr << result.err << std::flush;
  return result.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter and online partial evaluator for a first-order functional language"};
  app.require_subcommand(1);

  minipe::RunOptions run;
  auto* runCmd = app.add_subcommand("run", "Evaluate a program");
  runCmd->add_option("program", run.program, "Program (.fl)")->required();
  runCmd->add_option("--env", run.env.inlineBindings, "Binding name=literal (repeatable)");
  runCmd->add_option("--env-file", run.env.files, "Bindings file (repeatable)")->check(CLI::ExistingFile);
  runCmd->add_option("--fuel", run.fuel, "Maximum number of function applications");

  minipe::PevalOptions naive;
  auto* naiveCmd = app.add_subcommand("peval-naive", "Partially evaluate main by unfolding every call");
  naiveCmd->add_option("program", naive.program, "Program (.fl)")->required();
  addStatics(*naiveCmd, naive.statics);
  naiveCmd->add_option("--fuel", naive.fuel, "Maximum number of unfoldings");
  naiveCmd->add_option("-o", naive.output, "Write the residual program to this file");

  minipe::PevalOptions spec;
  bool noInline = false;
  auto* specCmd = app.add_subcommand("peval", "Specialize a program to its static inputs");
  specCmd->add_option("program", spec.program, "Program (.fl)")->required();
  addStatics(*specCmd, spec.statics);
  specCmd->add_option("--fuel", spec.fuel, "Maximum number of specializations and static unfoldings");
  specCmd->add_flag("--no-inline", noInline, "Keep every specialized definition");
  specCmd->add_option("-o", spec.output, "Write the residual program to this file");

  minipe::CompileDfaOptions dfa;
  std::string style = "bti";
  bool dfaNoInline = false;
  auto* dfaCmd = app.add_subcommand("compile-dfa", "Compile a state machine by specializing its interpreter");
  dfaCmd->add_option("machine", dfa.machine, "Machine description")->required();
  dfaCmd->add_option("--style", style, "Interpreter encoding")->check(CLI::IsMember({"naive", "bti"}));
  dfaCmd->add_flag("--no-inline", dfaNoInline, "Keep every specialized definition");
  dfaCmd->add_flag("--source", dfa.sourceOnly, "Print the encoded interpreter without specializing");
  dfaCmd->add_option("--fuel", dfa.fuel, "Maximum number of specializations and static unfoldings");
  dfaCmd->add_option("-o", dfa.output, "Write the residual program to this file");

  minipe::CheckOptions check;
  auto* checkCmd = app.add_subcommand("check", "Compare a program with its specialization");
  checkCmd->add_option("program", check.program, "Program (.fl)")->required();
  checkCmd->add_option("--static", check.statics.inlineBindings, "Static binding name=literal (repeatable)");
  checkCmd->add_option("--static-file", check.statics.files, "Static bindings file")->check(CLI::ExistingFile);
  checkCmd->add_option("--dynamic", check.dynamics.inlineBindings, "Dynamic binding name=literal (repeatable)");
  checkCmd->add_option("--dynamic-file", check.dynamics.files, "Dynamic bindings file")->check(CLI::ExistingFile);
  checkCmd->add_option("--fuel", check.fuel, "Fuel for every evaluation and the specialization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return minipe::kExitInputError;
  }

  if (*runCmd) return report(minipe::cmdRun(run));
  if (*naiveCmd) return report(minipe::cmdPevalNaive(naive));
  if (*specCmd) {
    spec.inlineResidual = !noInline;
    return report(minipe::cmdPeval(spec));
  }
  if (*dfaCmd) {
    dfa.style = style == "naive" ? minipe::DfaStyle::Naive : minipe::DfaStyle::Bti;
    dfa.inlineResidual = !dfaNoInline;
    return report(minipe::cmdCompileDfa(dfa));
  }
  return report(minipe::cmdCheck(check));
}
