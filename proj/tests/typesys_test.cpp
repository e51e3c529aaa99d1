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

#include <random>

#include "qlam/surface.hpp"
#include "qlam/typesys.hpp"
#include "test_util.hpp"

namespace qlam {
namespace {

using testing::Ty;

bool canon_is(const std::string& in, const std::string& out) {
  return canonical_type(Ty(in)) == Ty(out);
}

TEST(CanonicalType, Cases) {
  EXPECT_TRUE(canon_is("S(S(B))", "S(B)"));
  EXPECT_TRUE(canon_is("S(B) * S(S(B))", "S(B) * S(B)"));
  EXPECT_TRUE(canon_is("B", "B"));
  EXPECT_TRUE(canon_is("(B * B) * B", "B * (B * B)"));
  EXPECT_TRUE(canon_is("S(S(B)) => S(S(B * B))", "S(B) => S(B * B)"));
}

TEST(CanonicalType, Idempotent) {
  for (const char* s : {"S(S((B * S(B)) * B))", "(B * B) * (B * S(S(B)))", "B => S(S(B))"}) {
    const Type once = canonical_type(Ty(s));
    EXPECT_EQ(canonical_type(once), once) << s;
  }
}

TEST(Subtype, Cases) {
  EXPECT_TRUE(subtype(Ty("B"), Ty("S(B)")));
  EXPECT_FALSE(subtype(Ty("B * S(B)"), Ty("S(B * B)")));
  EXPECT_TRUE(subtype(Ty("B * S(B)"), Ty("S(B) * S(B)")));
  EXPECT_FALSE(subtype(Ty("S(B)"), Ty("B")));
  EXPECT_TRUE(subtype(Ty("S(S(B))"), Ty("S(B)")));
  EXPECT_TRUE(subtype(Ty("B * B"), Ty("S(B * B)")));
  EXPECT_TRUE(subtype(Ty("B => B"), Ty("B => S(B)")));
  EXPECT_FALSE(subtype(Ty("S(B) => B"), Ty("B => B")));
  EXPECT_TRUE(subtype(Ty("B => B"), Ty("S(B => B)")));
  EXPECT_TRUE(subtype(Ty("(B * B) * S(B)"), Ty("B * (B * S(B))")));
}

TEST(Subtype, ReflexiveAndTransitiveOnSamples) {
  const std::vector<Type> ts = {Ty("B"), Ty("S(B)"), Ty("B * B"), Ty("B * S(B)"), Ty("S(B) * S(B)"),
                                Ty("S(B * B)"), Ty("S(B) * B"), Ty("S(S(B) * B)")};
  for (const Type& a : ts) {
    EXPECT_TRUE(subtype(a, a));
    for (const Type& b : ts) {
      for (const Type& c : ts) {
        if (subtype(a, b) && subtype(b, c)) {
          EXPECT_TRUE(subtype(a, c)) << print(a) << " " << print(b) << " " << print(c);
        }
      }
    }
  }
}

TEST(Join, LeastUpperBounds) {
  EXPECT_EQ(*join(Ty("B"), Ty("B")), Ty("B"));
  EXPECT_EQ(canonical_type(*join(Ty("B"), Ty("S(B)"))), Ty("S(B)"));
  EXPECT_EQ(canonical_type(*join(Ty("B * S(B)"), Ty("S(B) * B"))), Ty("S(B) * S(B)"));
  EXPECT_FALSE(join(Ty("B"), Ty("B * B")).has_value());
}

TEST(BuildQ, Examples) {
  EXPECT_EQ(build_Q({5, {1, 2, 4}}), canonical_type(Ty("S(B * B) * B * S(B) * B")));
  EXPECT_EQ(build_Q({1, {}}), Ty("B"));
  EXPECT_EQ(build_Q({3, {1, 2}}), canonical_type(Ty("S(B * B) * B")));
  EXPECT_EQ(build_Q({1, {1}}), Ty("S(B)"));
  EXPECT_THROW(build_Q({2, {3}}), std::invalid_argument);
  EXPECT_THROW(build_Q({0, {}}), std::invalid_argument);
}

TEST(RecognizeQ, Examples) {
  EXPECT_EQ(*recognize_Q(Ty("S(B * B) * B")), (QSpec{3, {1, 2}}));
  EXPECT_EQ(*recognize_Q(Ty("S(B)")), (QSpec{1, {1}}));
  EXPECT_FALSE(recognize_Q(Ty("B => B")).has_value());
  EXPECT_FALSE(recognize_Q(Ty("S(B) * S(B)")).has_value());
  EXPECT_FALSE(recognize_Q(Ty("S(S(B) * B)")).has_value());
}

TEST(QFamily, RoundTripAllSmallRegisters) {
  int cases = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      QSpec s{n, {}};
      for (int i = 0; i < n; ++i) {
        if (mask & (1 << i)) s.superposed.insert(i + 1);
      }
      const auto back = recognize_Q(build_Q(s));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, s);
      ++cases;
    }
  }
  EXPECT_EQ(cases, 126);
}

TEST(CastSplit, BothDirections) {
  const auto r = cast_split(Ty("S(B) * B"), Ty("B * B"));
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->superposed_left);
  EXPECT_EQ(r->left_width, 1);
  const auto l = cast_split(Ty("B * B * S(B)"), Ty("B * B * B"));
  ASSERT_TRUE(l.has_value());
  EXPECT_FALSE(l->superposed_left);
  EXPECT_EQ(l->left_width, 2);
  EXPECT_FALSE(cast_split(Ty("B * B"), Ty("B * B")).has_value());
  EXPECT_FALSE(cast_split(Ty("S(B) * S(B)"), Ty("B * B")).has_value());
}

}  // namespace
}  // namespace qlam
