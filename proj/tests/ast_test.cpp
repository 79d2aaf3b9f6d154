#include <gtest/gtest.h>

#include "test_support.hpp"

namespace minipe {
namespace {

using testing::C;
using testing::I;
using testing::P;
using testing::V;

TEST(LookupVar, FindsBinding) {
  ValueEnv env{{"n", I(3)}};
  ASSERT_NE(lookupVar(env, "n"), nullptr);
  EXPECT_EQ(*lookupVar(env, "n"), I(3));
}

TEST(LookupVar, EmptyEnvironment) { EXPECT_EQ(lookupVar(ValueEnv{}, "x"), nullptr); }

TEST(LookupVar, UnboundName) {
  ValueEnv env{{"x", I(2)}};
  EXPECT_EQ(lookupVar(env, "y"), nullptr);
}

TEST(Env, RejectsDuplicateKeys) {
  ValueEnv env;
  EXPECT_TRUE(env.insert("x", I(1)));
  EXPECT_FALSE(env.insert("x", I(2)));
  EXPECT_EQ(*env.lookup("x"), I(1));
  EXPECT_THROW((ValueEnv{{"x", I(1)}, {"x", I(2)}}), DuplicateBindingError);
}

TEST(LookupFDef, ByName) {
  Prog p = parseProgram("fun exp(x,n) = if n==0 then 1 else x*exp(x,n-1); main = exp(2,3);");
  const FDef* def = lookupFDef(p.defs, "exp");
  ASSERT_NE(def, nullptr);
  EXPECT_EQ(def->params, (std::vector<std::string>{"x", "n"}));
  EXPECT_EQ(lookupFDef(p.defs, "pow"), nullptr);
  EXPECT_EQ(lookupFDef({}, "exp"), nullptr);
}

TEST(FreeVars, Examples) {
  EXPECT_EQ(freeVars(parseExpr("x*exp(x,n-1)")), (std::set<std::string>{"x", "n"}));
  EXPECT_TRUE(freeVars(C(1)).empty());
  EXPECT_EQ(freeVars(parseExpr("if x>0 then 10/x else 0")), (std::set<std::string>{"x"}));
}

TEST(ExprConstruction, PrimArityIsEnforced) {
  EXPECT_THROW(P(PrimOp::Add, {C(1)}), std::invalid_argument);
  EXPECT_THROW(P(PrimOp::Not, {C(1), C(2)}), std::invalid_argument);
  EXPECT_NO_THROW(P(PrimOp::Head, {V("xs")}));
}

TEST(ExprEquality, IsStructural) {
  EXPECT_EQ(parseExpr("x*(y+1)"), P(PrimOp::Mul, {V("x"), P(PrimOp::Add, {V("y"), C(1)})}));
  EXPECT_FALSE(parseExpr("x*y") == parseExpr("y*x"));
  EXPECT_FALSE(C(I(1)) == C(Value::boolean(true)));
}

TEST(Validate, AcceptsClosedWellTypedCalls) {
  EXPECT_NO_THROW(validate(parseProgram("fun f(a) = a; main = f(x);")));
}

TEST(Validate, RejectsMalformedPrograms) {
  Expr one = C(1);
  EXPECT_THROW(validate(Prog{{FDef{"f", {}, one}, FDef{"f", {}, one}}, one}), ValidationError);
  EXPECT_THROW(validate(Prog{{FDef{"f", {"a", "a"}, one}}, one}), ValidationError);
  EXPECT_THROW(validate(Prog{{FDef{"f", {"a"}, V("b")}}, one}), ValidationError);
  EXPECT_THROW(validate(Prog{{FDef{"f", {"a"}, V("a")}}, Expr::apply("f", {})}), ValidationError);
  EXPECT_THROW(validate(Prog{{}, Expr::apply("g", {})}), ValidationError);
}

TEST(AggregateConstants, CountsConstNodes) {
  EXPECT_EQ(countAggregateConstants(parseExpr("f([1],(1,2),just([]),just(1),3)")), 3u);
}

}  // namespace
}  // namespace minipe
