#include <gtest/gtest.h>

#include "test_support.hpp"

namespace minipe {
namespace {

using testing::B;
using testing::C;
using testing::I;
using testing::P;
using testing::S;
using testing::V;

Expr expBody() {
  return Expr::ifThenElse(P(PrimOp::Equal, {V("n"), C(0)}), C(1),
                          P(PrimOp::Mul, {V("x"), Expr::apply("exp", {V("x"), P(PrimOp::Sub, {V("n"), C(1)})})}));
}

TEST(ParseProgram, ExponentiationProgram) {
  Prog p = parseProgram("fun exp(x,n) = if n==0 then 1 else x*exp(x,n-1); main = exp(2,3);");
  Prog expected{{FDef{"exp", {"x", "n"}, expBody()}}, Expr::apply("exp", {C(2), C(3)})};
  EXPECT_EQ(p, expected);
}

TEST(ParseProgram, MainOnly) { EXPECT_EQ(parseProgram("main = 1;"), (Prog{{}, C(1)})); }

TEST(ParseProgram, ValidationErrors) {
  EXPECT_THROW(parseProgram("main = f(1);"), ValidationError);
  EXPECT_THROW(parseProgram("fun f(a) = a; main = f(1,2);"), ValidationError);
  EXPECT_THROW(parseProgram("fun f(a) = b; main = f(1);"), ValidationError);
  EXPECT_THROW(parseProgram("fun f(a,a) = a; main = f(1,2);"), ValidationError);
  EXPECT_THROW(parseProgram("fun f() = 1; fun f() = 2; main = f();"), ValidationError);
}

TEST(ParseProgram, SyntaxErrorsCarryPosition) {
  try {
    parseProgram("main = 1 +;\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 11u);
  }
  try {
    parseProgram("fun f(x) = x;\nmain = f(@);");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
  }
  EXPECT_THROW(parseProgram("main = head(1,2);"), ParseError);
  EXPECT_THROW(parseProgram("main = 1"), ParseError);
  EXPECT_THROW(parseProgram("main = \"abc;"), ParseError);
  EXPECT_THROW(parseProgram("main = \"a\\n\";"), ParseError);
  EXPECT_THROW(parseProgram("fun if(x) = x; main = 1;"), ParseError);
  EXPECT_THROW(parseProgram("main = 99999999999999999999;"), ParseError);
  EXPECT_THROW(parseProgram("main = [x];"), ParseError);
}

TEST(ParseExpr, PrecedenceAndAssociativity) {
  EXPECT_EQ(parseExpr("a||b&&c"), P(PrimOp::Or, {V("a"), P(PrimOp::And, {V("b"), V("c")})}));
  EXPECT_EQ(parseExpr("1+2*3==7"), P(PrimOp::Equal, {P(PrimOp::Add, {C(1), P(PrimOp::Mul, {C(2), C(3)})}), C(7)}));
  EXPECT_EQ(parseExpr("a-b-c"), P(PrimOp::Sub, {P(PrimOp::Sub, {V("a"), V("b")}), V("c")}));
  EXPECT_EQ(parseExpr("!a&&b"), P(PrimOp::And, {P(PrimOp::Not, {V("a")}), V("b")}));
  EXPECT_EQ(parseExpr("x - -1"), P(PrimOp::Sub, {V("x"), C(-1)}));
}

TEST(ParseExpr, ValueLiteralsBecomeSingleConstants) {
  EXPECT_EQ(parseExpr("[(1,\"a\"),(2,\"b\")]"),
            C(Value::list({Value::pair(I(1), S("a")), Value::pair(I(2), S("b"))})));
  EXPECT_EQ(parseExpr("just([nothing])"), C(Value::just(Value::list({Value::nothing()}))));
  EXPECT_EQ(parseExpr("(true,-3)"), C(Value::pair(B(true), I(-3))));
  EXPECT_EQ(parseExpr("\"say \\\"hi\\\"\""), C(S("say \"hi\"")));
}

TEST(ParseExpr, JustOfAnExpressionIsThePrimitive) {
  EXPECT_EQ(parseExpr("just(x)"), P(PrimOp::Just, {V("x")}));
  EXPECT_EQ(parseExpr("just(1+2)"), P(PrimOp::Just, {P(PrimOp::Add, {C(1), C(2)})}));
  EXPECT_EQ(parseExpr("just((1))"), P(PrimOp::Just, {C(1)}));
  EXPECT_EQ(parseExpr("just(1)"), C(Value::just(I(1))));
}

TEST(ParseExpr, BuiltinsAndComments) {
  EXPECT_EQ(parseExpr("-- leading comment\nfst(pair(1, x)) -- trailing"),
            P(PrimOp::Fst, {P(PrimOp::Pair, {C(1), V("x")})}));
  EXPECT_EQ(parseExpr("isnothing(fromjust(y))"), P(PrimOp::IsNothing, {P(PrimOp::FromJust, {V("y")})}));
  EXPECT_EQ(parseExpr("exp'a(x)"), Expr::apply("exp'a", {V("x")}));
}

TEST(PrettyProgram, ResidualProductIsRightNested) {
  Expr cube = P(PrimOp::Mul, {V("x"), P(PrimOp::Mul, {V("x"), P(PrimOp::Mul, {V("x"), C(1)})})});
  EXPECT_EQ(prettyProgram(Prog{{}, cube}), "main = x*(x*(x*1));\n");
}

TEST(PrettyProgram, OneDefinitionPerLine) {
  Prog p = parseProgram("fun exp(x,n) =\n  if n == 0 then 1\n  else x * exp(x, n - 1);\nmain = exp(2, 3);");
  EXPECT_EQ(prettyProgram(p), "fun exp(x,n) = if n==0 then 1 else x*exp(x,n-1);\nmain = exp(2,3);\n");
}

TEST(PrettyExpr, StructuredConstants) {
  EXPECT_EQ(prettyExpr(C(Value::list({Value::pair(I(1), S("a"))}))), "[(1,\"a\")]");
  EXPECT_EQ(prettyExpr(P(PrimOp::Just, {C(1)})), "just((1))");
  EXPECT_EQ(prettyExpr(P(PrimOp::Sub, {V("x"), C(-1)})), "x-(-1)");
  EXPECT_EQ(prettyExpr(P(PrimOp::Add, {C(1), Expr::ifThenElse(V("b"), C(1), C(2))})), "1+(if b then 1 else 2)");
  EXPECT_EQ(prettyExpr(P(PrimOp::Not, {P(PrimOp::Lt, {V("a"), V("b")})})), "!(a<b)");
}

TEST(RoundTrip, Corpus) {
  for (const std::string& name : testing::corpusNames()) {
    Prog p = testing::loadCorpus(name);
    std::string text = prettyProgram(p);
    EXPECT_EQ(parseProgram(text), p) << name;
    EXPECT_EQ(prettyProgram(parseProgram(text)), text) << name;
  }
}

TEST(RoundTrip, RandomExpressions) {
  testing::ExprGen gen(2024);
  for (int i = 0; i < 2000; ++i) {
    Expr e = gen(4);
    std::string text = prettyExpr(e);
    Expr back = parseExpr(text);
    ASSERT_EQ(back, e) << text;
    ASSERT_EQ(prettyExpr(back), text);
  }
}

TEST(ParseBindings, Examples) {
  ValueEnv one = parseBindings("n=3");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(*one.lookup("n"), I(3));

  EXPECT_TRUE(parseBindings("").empty());
  EXPECT_TRUE(parseBindings("-- nothing here\n").empty());

  ValueEnv two = parseBindings("x=2, n=3");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(*two.lookup("x"), I(2));
  EXPECT_EQ(*two.lookup("n"), I(3));

  ValueEnv lines = parseBindings("input = [\"a\",\"b\"]\nflag = true\nm = just((1,-2))\n");
  EXPECT_EQ(*lines.lookup("input"), Value::list({S("a"), S("b")}));
  EXPECT_EQ(*lines.lookup("m"), Value::just(Value::pair(I(1), I(-2))));
}

TEST(ParseBindings, Errors) {
  EXPECT_THROW(parseBindings("x=1, x=2"), DuplicateBindingError);
  EXPECT_THROW(parseBindings("x=1 y=2"), ParseError);
  EXPECT_THROW(parseBindings("x=y"), ParseError);
  EXPECT_THROW(parseBindings("x="), ParseError);
}

}  // namespace
}  // namespace minipe
