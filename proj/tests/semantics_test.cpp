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
#include <deque>
#include <random>

#include "qlam/rewrite.hpp"
#include "qlam/semantics.hpp"
#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"
#include "test_util.hpp"

namespace qlam {
namespace {

using testing::load;
using testing::T;
using testing::Ty;

const double kR = 1.0 / std::sqrt(2.0);

DenVector vec(std::vector<Amplitude> amps) {
  int w = 0;
  while ((std::size_t{1} << w) < amps.size()) ++w;
  return DenVector{w, std::move(amps)};
}

TEST(Membership, Examples) {
  EXPECT_TRUE(denote_type_membership(Ty("B"), vec({1, 0})));
  EXPECT_FALSE(denote_type_membership(Ty("B"), vec({kR, kR})));
  EXPECT_TRUE(denote_type_membership(Ty("S(B)"), vec({kR, kR})));
  EXPECT_FALSE(denote_type_membership(Ty("B * B"), vec({kR, 0, 0, kR})));
  EXPECT_TRUE(denote_type_membership(Ty("S(B * B)"), vec({kR, 0, 0, kR})));
  EXPECT_FALSE(denote_type_membership(Ty("S(B) * S(B)"), vec({kR, 0, 0, kR})));
  EXPECT_TRUE(denote_type_membership(Ty("B * S(B)"), vec({0, 0, 0.6, 0.8})));
  EXPECT_FALSE(denote_type_membership(Ty("B * S(B)"), vec({0.6, 0, 0.8, 0})));
  EXPECT_FALSE(denote_type_membership(Ty("B"), vec({1, 0, 0, 0})));
  EXPECT_THROW(denote_type_membership(Ty("B => B"), vec({1, 0})), SemanticsError);
}

TEST(Denote, Examples) {
  EXPECT_TRUE(denset_equal(denote(T("|0> * |1>")), {DenVector::basis(2, 1)}));
  EXPECT_TRUE(denset_equal(denote(T("pi ((1/sqrt(2)).|0> + (1/sqrt(2)).|1>)")),
                           {DenVector::basis(1, 0), DenVector::basis(1, 1)}));
  EXPECT_TRUE(denset_equal(denote(T("(3/5).|0> + (4/5).|1>")), {vec({0.6, 0.8})}));
  EXPECT_TRUE(denset_equal(denote(T("null[B]")), {DenVector::zero(1)}));
  EXPECT_TRUE(denset_equal(denote(T("head (|1> * |0>)")), {DenVector::basis(1, 1)}));
  EXPECT_TRUE(denset_equal(denote(T("tail (|1> * |0>)")), {DenVector::basis(1, 0)}));
}

TEST(Denote, ApplicationIsLinearOnBaseDomains) {
  const DenSet d = denote(T("(\\x:B. x * x) ((1/sqrt(2)).|0> + (1/sqrt(2)).|1>)"));
  EXPECT_TRUE(denset_equal(d, {vec({kR, 0, 0, kR})}));
}

TEST(Denote, FreeVariablesComeFromTheValuation) {
  const Valuation phi{{"x", {DenVector::basis(1, 0), DenVector::basis(1, 1)}}};
  const DenSet d = denote(T("x * |0>"), phi);
  EXPECT_TRUE(denset_equal(d, {DenVector::basis(2, 0), DenVector::basis(2, 2)}));
}

TEST(Denote, RejectsBareFunctions) {
  EXPECT_THROW(denote(T("\\x:B. x")), SemanticsError);
  EXPECT_THROW(denote(load("teleport").main), SemanticsError);
}

TEST(Soundness, Examples) {
  EXPECT_TRUE(check_soundness(T("|0>")));
  EXPECT_TRUE(check_soundness(load("deutsch_id").main));
  EXPECT_TRUE(check_soundness(T("(1/sqrt(2)).|0> + (1/sqrt(2)).|1>")));
  EXPECT_FALSE(denote_type_membership(Ty("B"), denote(T("(1/sqrt(2)).|0> + (1/sqrt(2)).|1>"))[0]));
}

TEST(Commutes, Examples) {
  EXPECT_TRUE(check_reduction_commutes(T("if |1> then |0> else |1>")));
  EXPECT_TRUE(check_reduction_commutes(T("pi ((1/sqrt(2)).|0> + (1/sqrt(2)).|1>)")));
  EXPECT_TRUE(check_reduction_commutes(T("(\\x:B. x * x) |0>")));
  EXPECT_TRUE(check_reduction_commutes(T("|0>")));
}

TEST(Commutes, DetectsABrokenRule) {
  EngineConfig swap;
  swap.mutation = Mutation::kSwapIte;
  EXPECT_FALSE(check_reduction_commutes(T("if |1> then |0> else |1>"), swap));
}

const char* const kQubitCorpus[] = {"cloning_distributes", "deutsch_const0", "deutsch_id",
                                    "hadamard_on_superposition", "no_cloning_measure_first", "swap",
                                    "teleport_basis0", "teleport_basis1", "teleport_plus",
                                    "teleport_skew", "three_qubit_measure"};

TEST(Corpus, SoundnessOfEveryQubitTypedProgram) {
  for (const char* name : kQubitCorpus) EXPECT_TRUE(check_soundness(load(name).main)) << name;
}

TEST(Corpus, EveryStepOnEveryBranchCommutes) {
  for (const char* name : kQubitCorpus) {
    std::deque<Term> todo{load(name).main};
    std::size_t visited = 0;
    while (!todo.empty()) {
      const Term t = todo.front();
      todo.pop_front();
      ++visited;
      ASSERT_TRUE(check_reduction_commutes(t)) << name << " at " << print(t);
      if (auto s = step(t)) {
        for (const Outcome& o : s->outcomes) todo.push_back(o.term);
      }
    }
    EXPECT_GT(visited, 1u) << name;
  }
}

// Random register types built from B, S and tensors, with a vector drawn
// from the smaller one; membership must carry over to the larger.
class TypeSampler {
 public:
  explicit TypeSampler(std::uint64_t seed) : rng_(seed) {}

  Type type(int depth, int width) {
    std::uniform_int_distribution<int> d(0, 2);
    if (width == 1) return depth > 0 && d(rng_) == 0 ? Type::sup(type(depth - 1, 1)) : Type::base();
    if (depth > 0 && d(rng_) == 0) return Type::sup(type(depth - 1, width));
    const int k = std::uniform_int_distribution<int>(1, width - 1)(rng_);
    return Type::tensor(type(depth - 1, k), type(depth - 1, width - k));
  }

  // A supertype obtained by wrapping random subtrees in S.
  Type widen(const Type& a) {
    std::bernoulli_distribution coin(0.3);
    if (coin(rng_)) return Type::sup(a);
    if (a.is_tensor()) return Type::tensor(widen(a.left()), widen(a.right()));
    if (a.is_sup()) return Type::sup(widen(a.inner()));
    return a;
  }

  // A vector of the denotation of a: base vectors for B, tensor products
  // for ⊗, and random combinations of members for S.
  DenVector member(const Type& a) {
    if (a.is_base()) return DenVector::basis(1, std::uniform_int_distribution<int>(0, 1)(rng_));
    if (a.is_tensor()) {
      const DenVector l = member(a.left());
      const DenVector r = member(a.right());
      DenVector out = DenVector::zero(l.width + r.width);
      for (std::size_t i = 0; i < l.amps.size(); ++i) {
        for (std::size_t j = 0; j < r.amps.size(); ++j) out.amps[i * r.amps.size() + j] = l.amps[i] * r.amps[j];
      }
      return out;
    }
    std::normal_distribution<double> g;
    DenVector out = member(a.inner());
    for (Amplitude& x : out.amps) x *= Amplitude(g(rng_), g(rng_));
    const DenVector extra = member(a.inner());
    const Amplitude c(g(rng_), g(rng_));
    for (std::size_t i = 0; i < out.amps.size(); ++i) out.amps[i] += c * extra.amps[i];
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

TEST(Membership, SubtypesDenoteSubsets) {
  TypeSampler s(2024);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Type a = s.type(4, 1 + i % 3);
    const Type b = s.widen(a);
    ASSERT_TRUE(subtype(a, b));
    const DenVector v = s.member(a);
    EXPECT_TRUE(denote_type_membership(a, v, 1e-8)) << print(a);
    EXPECT_TRUE(denote_type_membership(b, v, 1e-8)) << print(a) << " <= " << print(b);
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(Membership, SuperposedTensorIsTheFullSpace) {
  TypeSampler s(99);
  for (int i = 0; i < 100; ++i) {
    DenVector v = s.member(Ty("S(B * B)"));
    // Every vector of the right size lies in S(B * B), entangled or not.
    EXPECT_TRUE(denote_type_membership(Ty("S(B * B)"), v, 1e-8));
    EXPECT_TRUE(denote_type_membership(Ty("S(S(B) * S(B))"), v, 1e-8));
  }
}

}  // namespace
}  // namespace qlam
