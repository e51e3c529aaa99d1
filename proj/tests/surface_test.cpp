// Copyright 2026 The qlam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "qlam/surface.hpp"
#include "qlam/syntax.hpp"
#include "test_util.hpp"

namespace qlam {
namespace {

using testing::T;
using testing::Ty;
using K = Term::Kind;

TEST(ParseTerm, Kets) {
  EXPECT_TRUE(T("|0>").is(K::kKet0));
  EXPECT_TRUE(T("|1>").is(K::kKet1));
}

TEST(ParseTerm, ScaledSum) {
  const Term t = T("(1/sqrt(2)) . (|0> + |1>)");
  ASSERT_TRUE(t.is(K::kScale));
  EXPECT_NEAR(t.coef().re(), 1.0 / std::sqrt(2.0), 1e-15);
  ASSERT_TRUE(t.body().is(K::kSum));
  EXPECT_TRUE(t.body().left().is(K::kKet0));
  EXPECT_TRUE(t.body().right().is(K::kKet1));
}

TEST(ParseTerm, IfSugarExpandsToIte) {
  const Term t = T("\\x:B. if x then (-|1>) else |1>");
  ASSERT_TRUE(t.is(K::kLam));
  EXPECT_EQ(t.name(), "x");
  EXPECT_TRUE(t.annotation().is_base());
  const Term& body = t.body();
  ASSERT_TRUE(body.is(K::kApp));
  ASSERT_TRUE(body.fun().is(K::kApp) && body.fun().fun().is(K::kApp));
  EXPECT_TRUE(body.fun().fun().fun().is(K::kIte));
  EXPECT_TRUE(structurally_equal(body.fun().arg(), T("-|1>")));
}

TEST(ParseTerm, Precedence) {
  // Application binds tighter than tensor, tensor tighter than sums.
  const Term t = T("f x * y + z");
  ASSERT_TRUE(t.is(K::kSum));
  ASSERT_TRUE(t.left().is(K::kTensor));
  EXPECT_TRUE(t.left().left().is(K::kApp));
  EXPECT_TRUE(T("a * b * c").right().is(K::kTensor));
  EXPECT_TRUE(T("a - b").right().is(K::kScale));
}

TEST(ParseTerm, PrefixOperators) {
  EXPECT_TRUE(T("pi x").is(K::kProj));
  EXPECT_EQ(T("pi x").index(), 1);
  EXPECT_EQ(T("pi[2] x").index(), 2);
  EXPECT_TRUE(T("head tail x").body().is(K::kTail));
  const Term c = T("cast{S(B)*B}{B*B} x");
  ASSERT_TRUE(c.is(K::kCast));
  EXPECT_EQ(print(c.source(), true), "S(B)*B");
  EXPECT_EQ(print(c.target(), true), "B*B");
}

TEST(ParseTerm, ComplexScalars) {
  const Term t = T("(1/2 + 1/2*i).|0>");
  EXPECT_NEAR(t.coef().re(), 0.5, 1e-15);
  EXPECT_NEAR(t.coef().im(), 0.5, 1e-15);
}

TEST(ParseType, Shapes) {
  EXPECT_EQ(print(Ty("B => S(B)")), "B => S(B)");
  EXPECT_TRUE(Ty("B * B * B").right().is_tensor());
  EXPECT_TRUE(Ty("B => B => B").codomain().is_arrow());
  EXPECT_THROW(Ty("(B => B) => B"), ParseError);
}

TEST(Print, Basics) {
  EXPECT_EQ(print(Term::ket1()), "|1>");
  EXPECT_EQ(print(T("(3/5).|0> + (4/5).|1>")), "(3/5).|0> + (4/5).|1>");
  EXPECT_EQ(print(Term::cast(Ty("S(B)*B"), Ty("B*B"), T("x"))), "cast{S(B)*B}{B*B} x");
  EXPECT_EQ(print(T("|1> * ((1/sqrt(2)).|0> + (-1/sqrt(2)).|1>)")),
            "|1> * ((1/sqrt(2)).|0> + (-1/sqrt(2)).|1>)");
  EXPECT_EQ(print(T("|0> - |1>")), "|0> - |1>");
}

TEST(PrintScalar, RecognizedForms) {
  EXPECT_EQ(print_scalar(Scalar(2.0)), "2");
  EXPECT_EQ(print_scalar(Scalar(0.6)), "3/5");
  EXPECT_EQ(print_scalar(Scalar(2.0 / std::sqrt(5.0))), "2/sqrt(5)");
  EXPECT_EQ(print_scalar(Scalar(-1.0 / std::sqrt(2.0))), "-1/sqrt(2)");
  EXPECT_EQ(print_scalar(Scalar(0.0, 1.0)), "i");
}

TEST(Print, RoundTripsThroughParser) {
  for (const char* src : {"\\x:B. if x then (-|1>) else |1>",
                          "(\\x:S(B). x * |0>) ((1/sqrt(2)).|0> + (1/sqrt(2)).|1>)",
                          "cast{B*S(B)}{B*B} (|0> * (|0> + |1>))",
                          "pi[2] (2.|0> * |1> * |1> + |0> * |1> * |0> + 3.|1> * |1> * |1>)",
                          "head tail (|0> * |1> * |0>)",
                          "ite |1> |0> (null[B])",
                          "2.(3.|0>)",
                          "(0.3 + 0.4*i).|1> - |0>"}) {
    const Term t = T(src);
    EXPECT_TRUE(structurally_equal(T(print(t)), t)) << src << " printed as " << print(t);
  }
}

TEST(ParseFile, MacrosAndExpectation) {
  const SourceFile f = parse(
      "-- expect: B => S(B)\n"
      "let H = \\x:B. (1/sqrt(2)).(|0> + (if x then (-|1>) else |1>));\n"
      "H\n");
  ASSERT_EQ(f.defs.size(), 1u);
  EXPECT_EQ(f.defs[0].first, "H");
  ASSERT_TRUE(f.expect.has_value());
  EXPECT_EQ(print(*f.expect), "B => S(B)");
  EXPECT_TRUE(f.main.is(K::kLam));
}

TEST(ParseFile, Errors) {
  EXPECT_THROW(parse("let f = |0>; let f = |1>; f"), ParseError);
  EXPECT_THROW(parse("g |0>"), ParseError);
  EXPECT_THROW(parse("let if = |0>; |0>"), ParseError);
  try {
    parse("|0> +\n  )");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(ParseTerm, CommentsAreIgnored) {
  EXPECT_TRUE(T("|0> -- trailing comment").is(K::kKet0));
}

}  // namespace
}  // namespace qlam
