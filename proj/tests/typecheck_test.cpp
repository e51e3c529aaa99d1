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

#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"
#include "test_util.hpp"

namespace qlam {
namespace {

using testing::load;
using testing::T;
using testing::Ty;

Type infer_closed(const std::string& s) { return canonical_type(infer(T(s))); }

TypeErrorKind error_kind(const TypingContext& ctx, const std::string& s) {
  try {
    infer(ctx, T(s));
  } catch (const TypeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no type error for " << s;
  return TypeErrorKind::kUnboundVariable;
}

const char* kH = "\\x:B. (1/sqrt(2)).(|0> + (if x then (-|1>) else |1>))";

TEST(Infer, Hadamard) { EXPECT_EQ(infer_closed(kH), Ty("B => S(B)")); }

TEST(Infer, CorpusFixtures) {
  EXPECT_EQ(canonical_type(infer(load("deutsch_id").main)), Ty("B * S(B)"));
  EXPECT_EQ(canonical_type(infer(load("deutsch_const0").main)), Ty("B * S(B)"));
  EXPECT_EQ(canonical_type(infer(load("teleport").main)), Ty("S(B) => S(B)"));
  EXPECT_EQ(canonical_type(infer(load("three_qubit_measure").main)), canonical_type(Ty("B * B * S(B)")));
}

TEST(Infer, EveryCorpusFileMatchesItsExpectation) {
  for (const char* name : {"cloning_distributes", "deutsch_const0", "deutsch_id", "hadamard_on_superposition",
                           "no_cloning_measure_first", "swap", "teleport", "teleport_basis0", "teleport_basis1",
                           "teleport_plus", "teleport_skew", "three_qubit_measure"}) {
    const SourceFile f = load(name);
    ASSERT_TRUE(f.expect.has_value()) << name;
    const Type a = infer(f.main);
    EXPECT_TRUE(subtype(a, *f.expect) && subtype(*f.expect, a)) << name << ": " << print(a);
  }
}

TEST(Infer, BasicRules) {
  EXPECT_EQ(infer_closed("|0>"), Ty("B"));
  EXPECT_EQ(infer_closed("|0> + |1>"), Ty("S(B)"));
  EXPECT_EQ(infer_closed("2.|0>"), Ty("S(B)"));
  EXPECT_EQ(infer_closed("null[B * B]"), Ty("S(B * B)"));
  EXPECT_EQ(infer_closed("ite"), Ty("B => B => B => B"));
  EXPECT_EQ(infer_closed("if |1> then |0> else |1>"), Ty("B"));
  EXPECT_EQ(infer_closed("if |1> then |0> + |1> else |1>"), Ty("S(B)"));
  EXPECT_EQ(infer_closed("pi (|0> + |1>)"), Ty("B"));
  EXPECT_EQ(infer_closed("pi[1] (|0> * |0> + |1> * |1>)"), Ty("B * S(B)"));
  EXPECT_EQ(infer_closed("head (|0> * |1> * |1>)"), Ty("B"));
  EXPECT_EQ(infer_closed("tail (|0> * |1> * |1>)"), Ty("B * B"));
  EXPECT_EQ(infer_closed("cast{B*S(B)}{B*B} (|0> * (|0> + |1>))"), Ty("S(B * B)"));
}

TEST(Infer, SuperposedApplication) {
  // Base-typed functions applied to superpositions get the S-lifted type.
  EXPECT_EQ(infer_closed("(\\x:B. x * x) (|0> + |1>)"), Ty("S(B * B)"));
  EXPECT_EQ(infer_closed("((\\x:B. x) + (\\x:B. |0>)) |1>"), Ty("S(B)"));
}

TEST(Infer, ArrowInContextRejected) {
  const TypingContext ctx{{"x", Ty("S(B)")}, {"t", Ty("B => B")}};
  EXPECT_EQ(error_kind(ctx, "t x"), TypeErrorKind::kAnnotationMismatch);
}

TEST(Infer, LinearVariables) {
  const TypingContext ctx{{"x", Ty("S(B)")}};
  EXPECT_EQ(error_kind(ctx, "x * x"), TypeErrorKind::kLinearReused);
  EXPECT_EQ(error_kind(ctx, "|0>"), TypeErrorKind::kLinearDropped);
  EXPECT_EQ(error_kind({}, "\\x:S(B). x * x"), TypeErrorKind::kLinearReused);
  EXPECT_EQ(error_kind({}, "\\x:S(B). |0>"), TypeErrorKind::kLinearDropped);
  // Base variables may be duplicated and dropped.
  EXPECT_EQ(infer_closed("\\x:B. x * x"), Ty("B => B * B"));
  EXPECT_EQ(infer_closed("\\x:B. |0>"), Ty("B => B"));
  EXPECT_EQ(canonical_type(infer({{"x", Ty("S(B)")}}, T("x * |0>"))), Ty("S(B) * B"));
}

TEST(Infer, ErrorKinds) {
  EXPECT_EQ(error_kind({}, "y"), TypeErrorKind::kUnboundVariable);
  EXPECT_EQ(error_kind({}, "|0> |1>"), TypeErrorKind::kNotAFunction);
  EXPECT_EQ(error_kind({}, "(\\x:B. x) (|0> * |1>)"), TypeErrorKind::kDomainMismatch);
  EXPECT_EQ(error_kind({}, "|0> + |0> * |1>"), TypeErrorKind::kDomainMismatch);
  EXPECT_EQ(error_kind({}, "pi[3] (|0> * |1>)"), TypeErrorKind::kNotQType);
  EXPECT_EQ(error_kind({}, "pi (\\x:B. x)"), TypeErrorKind::kNotQType);
  EXPECT_EQ(error_kind({}, "cast{B*B}{B*B} (|0> * |1>)"), TypeErrorKind::kBadCastShape);
  EXPECT_EQ(error_kind({}, "cast{S(B)*B}{B*B} (|0> * (|0> + |1>))"), TypeErrorKind::kBadCastShape);
  EXPECT_EQ(error_kind({}, "head (|0> + |1>)"), TypeErrorKind::kDomainMismatch);
}

TEST(Infer, ErrorLocationPointsAtSubterm) {
  try {
    infer(T("(\\x:B. x) (|0> * |1>)"));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.location(), "arg");
  }
}

TEST(Check, Subsumption) {
  EXPECT_TRUE(check({}, T("|0>"), Ty("S(B)")));
  EXPECT_TRUE(check({}, T("((\\x:B. x) + (\\x:B. |0> + |1>)) |0>"), Ty("S(B)")));
  EXPECT_FALSE(check({}, T("|0> * (|0> + |1>)"), Ty("S(B * B)")));
  EXPECT_TRUE(check({}, T("cast{B*S(B)}{B*B} (|0> * (|0> + |1>))"), Ty("S(B * B)")));
  EXPECT_FALSE(check({}, T("|0> + |1>"), Ty("B")));
}

}  // namespace
}  // namespace qlam
