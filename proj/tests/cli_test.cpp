#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "test_support.hpp"

namespace minipe {
namespace {

namespace fs = std::filesystem;

std::string corpus(const std::string& name) { return testing::programPath(name); }

PevalOptions pevalOf(const std::string& name, std::vector<std::string> statics = {}) {
  PevalOptions opts;
  opts.program = corpus(name);
  opts.statics.inlineBindings = std::move(statics);
  return opts;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("minipe_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    std::string p = (path_ / name).string();
    writeFile(p, content);
    return p;
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

TEST(Run, PrintsValue) {
  RunOptions opts;
  opts.program = corpus("exp.fl");
  CommandResult r = cmdRun(opts);
  EXPECT_EQ(r.exitCode, kExitOk);
  EXPECT_EQ(r.out, "8\n");
}

TEST(Run, ExitStatuses) {
  TempDir dir;
  RunOptions opts;
  opts.program = dir.file("div.fl", "main = 10/x;\n");
  opts.env.inlineBindings = {"x=0"};
  EXPECT_EQ(cmdRun(opts).exitCode, kExitRuntimeError);

  opts.program = corpus("exp_2n.fl");
  opts.env.inlineBindings = {"n=-1"};
  EXPECT_EQ(cmdRun(opts).exitCode, kExitFuelExhausted);

  opts.program = dir.file("bad.fl", "main = ;\n");
  opts.env.inlineBindings = {};
  CommandResult bad = cmdRun(opts);
  EXPECT_EQ(bad.exitCode, kExitInputError);
  EXPECT_NE(bad.err.find("1:8"), std::string::npos) << bad.err;

  opts.program = dir.path("missing.fl");
  EXPECT_EQ(cmdRun(opts).exitCode, kExitInputError);

  opts.program = corpus("exp_2n.fl");
  opts.env.inlineBindings = {"n=1", "n=2"};
  EXPECT_EQ(cmdRun(opts).exitCode, kExitInputError);
}

TEST(Run, BindingsFromFile) {
  TempDir dir;
  RunOptions opts;
  opts.program = corpus("exp_xn.fl");
  opts.env.files = {dir.file("env.txt", "x = 3\nn = 4\n")};
  EXPECT_EQ(cmdRun(opts).out, "81\n");
}

TEST(PevalNaive, PrintsResidualMain) {
  CommandResult r = cmdPevalNaive(pevalOf("exp_xn.fl", {"n=3"}));
  EXPECT_EQ(r.exitCode, kExitOk);
  EXPECT_EQ(r.out, "main = x*(x*(x*1));\n");
  PevalOptions diverge = pevalOf("exp_2n.fl");
  diverge.fuel = 100;
  EXPECT_EQ(cmdPevalNaive(diverge).exitCode, kExitFuelExhausted);
}

TEST(Peval, InlinedAndPlainResiduals) {
  EXPECT_EQ(cmdPeval(pevalOf("exp_x3.fl")).out, "main = x*(x*(x*1));\n");
  PevalOptions plain = pevalOf("exp_x3.fl");
  plain.inlineResidual = false;
  EXPECT_EQ(cmdPeval(plain).out,
            "fun exp_1(x) = x*exp_2(x);\nfun exp_2(x) = x*exp_3(x);\nfun exp_3(x) = x*exp_4(x);\n"
            "fun exp_4(x) = 1;\nmain = exp_1(x);\n");
  EXPECT_EQ(cmdPeval(pevalOf("exp_2n.fl")).out,
            "fun exp_1(n) = if n==0 then 1 else 2*exp_1(n-1);\nmain = exp_1(n);\n");
}

TEST(Peval, ExtraneousStaticIsIgnoredWithWarning) {
  CommandResult r = cmdPeval(pevalOf("exp_x3.fl", {"n=3"}));
  EXPECT_EQ(r.exitCode, kExitOk);
  EXPECT_EQ(r.out, "main = x*(x*(x*1));\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Peval, OutputFileRoundTrips) {
  TempDir dir;
  PevalOptions opts = pevalOf("exp_2n.fl");
  opts.output = dir.path("out.fl");
  CommandResult r = cmdPeval(opts);
  EXPECT_EQ(r.exitCode, kExitOk);
  EXPECT_TRUE(r.out.empty());
  Prog residual = loadProgram(*opts.output);
  for (std::int64_t n = 0; n <= 10; ++n)
    EXPECT_EQ(*eval(residual, ValueEnv{{"n", testing::I(n)}}).value(), testing::I(*testing::hostPower(2, n)));
}

TEST(Peval, OutputIsByteDeterministic) {
  for (std::string name : {"exp_2n.fl", "assoc.fl", "dfa_naive.fl", "dfa_bti.fl", "mutual.fl"}) {
    std::string first = cmdPeval(pevalOf(name)).out;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(cmdPeval(pevalOf(name)).out, first) << name;
  }
}

TEST(CompileDfa, ReportsCounts) {
  CompileDfaOptions opts;
  opts.machine = corpus("example.dfa");
  CommandResult bti = cmdCompileDfa(opts);
  EXPECT_EQ(bti.exitCode, kExitOk);
  EXPECT_NE(bti.out.find("structured constants: 0\n"), std::string::npos) << bti.out;
  opts.style = DfaStyle::Naive;
  CommandResult naive = cmdCompileDfa(opts);
  EXPECT_EQ(naive.exitCode, kExitOk);
  EXPECT_EQ(naive.out.find("structured constants: 0\n"), std::string::npos) << naive.out;
}

TEST(CompileDfa, SourceMatchesCorpus) {
  CompileDfaOptions opts;
  opts.machine = corpus("example.dfa");
  opts.sourceOnly = true;
  EXPECT_EQ(parseProgram(cmdCompileDfa(opts).out), testing::loadCorpus("dfa_bti.fl"));
  opts.style = DfaStyle::Naive;
  EXPECT_EQ(parseProgram(cmdCompileDfa(opts).out), testing::loadCorpus("dfa_naive.fl"));
}

TEST(CompileDfa, MalformedMachineIsAnInputError) {
  TempDir dir;
  CompileDfaOptions opts;
  opts.machine = dir.file("bad.dfa", "start: 1\naccept: 2\nfrom 1 --a--> 2\nfrom 1 --a--> 1\n");
  CommandResult r = cmdCompileDfa(opts);
  EXPECT_EQ(r.exitCode, kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Check, Verdicts) {
  CheckOptions opts;
  opts.program = corpus("exp_xn.fl");
  opts.statics.inlineBindings = {"n=5"};
  opts.dynamics.inlineBindings = {"x=3"};
  CommandResult equal = cmdCheck(opts);
  EXPECT_EQ(equal.exitCode, kExitOk);
  EXPECT_EQ(equal.out, "original: 243\nresidual: 243\ninlined:  243\nEQUAL\n");

  opts.statics.inlineBindings = {"x=2"};
  opts.dynamics.inlineBindings = {"n=-1"};
  EXPECT_EQ(cmdCheck(opts).exitCode, kExitFuelExhausted);

  opts.dynamics.inlineBindings = {};
  EXPECT_EQ(cmdCheck(opts).exitCode, kExitInputError);

  opts.dynamics.inlineBindings = {"x=2", "n=1"};
  EXPECT_EQ(cmdCheck(opts).exitCode, kExitInputError);
}

TEST(Check, DelayedErrorSurfacesInResidual) {
  CheckOptions opts;
  opts.program = corpus("cond.fl");
  opts.statics.inlineBindings = {"x=0"};
  opts.dynamics.inlineBindings = {"y=-1"};
  CommandResult r = cmdCheck(opts);
  EXPECT_EQ(r.exitCode, kExitOk) << r.out;
  EXPECT_NE(r.out.find("DivByZero"), std::string::npos) << r.out;
}

#ifdef MINIPE_CLI
int runTool(const std::string& args) {
  int status = std::system((std::string(MINIPE_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Executable, ExitCodes) {
  EXPECT_EQ(runTool("run " + corpus("exp.fl")), 0);
  EXPECT_EQ(runTool("run " + corpus("exp_2n.fl") + " --env n=-1"), 2);
  EXPECT_EQ(runTool("run " + corpus("cond.fl") + " --env x=0 --env y=-1"), 1);
  EXPECT_EQ(runTool("peval " + corpus("exp_x3.fl") + " --static n=3"), 0);
  EXPECT_EQ(runTool("compile-dfa " + corpus("example.dfa") + " --style naive"), 0);
  EXPECT_EQ(runTool("compile-dfa " + corpus("exp.fl")), 3);
  EXPECT_EQ(runTool("frobnicate"), 3);
}
#endif

}  // namespace
}  // namespace minipe
