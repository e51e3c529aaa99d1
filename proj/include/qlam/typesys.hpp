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

#ifndef QLAM_TYPESYS_HPP
#define QLAM_TYPESYS_HPP

#include <optional>
#include <set>

#include "qlam/syntax.hpp"

namespace qlam {

/// Collapses S(S(X)) to S(X) everywhere and reassociates every ⊗ spine to
/// the right. Idempotent.
Type canonical_type(const Type& a);

/// Decides a ⪯ b: the reflexive-transitive closure of A ⪯ S(A),
/// S(S(A)) ⪯ S(A), covariance under S and arrow codomains, and the two
/// tensor congruences (⊗ taken as associative).
bool subtype(const Type& a, const Type& b);

/// Mutual subtyping.
bool type_equivalent(const Type& a, const Type& b);

/// A ⪯-least common supertype, when the rule set provides one.
std::optional<Type> join(const Type& a, const Type& b);

/// Register shape (n, S): n qubits, positions in S superposed (1-based).
struct QSpec {
  int n = 1;
  std::set<int> superposed;

  bool operator==(const QSpec&) const = default;
};

bool is_valid(const QSpec& spec);

/// The Q_n^S type family. Result is in canonical form, e.g. (5, {1,2,4})
/// gives S(B ⊗ B) ⊗ B ⊗ S(B) ⊗ B. Throws std::invalid_argument on an
/// invalid QSpec.
Type build_Q(const QSpec& spec);

/// Inverse of build_Q modulo canonical_type; nullopt outside the family.
std::optional<QSpec> recognize_Q(const Type& a);

/// How a cast from S(source) to S(target) splits its source: either
/// S(A)⊗C (superposed part on the left) or A⊗S(C), with `left_width` the
/// number of qubits in the left part.
struct CastSplit {
  bool superposed_left = true;
  int left_width = 0;
};

/// The split that makes `target` the source with one S(·) removed, if any.
std::optional<CastSplit> cast_split(const Type& source, const Type& target);

}  // namespace qlam

#endif  // QLAM_TYPESYS_HPP
