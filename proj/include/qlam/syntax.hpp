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

#ifndef QLAM_SYNTAX_HPP
#define QLAM_SYNTAX_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qlam/scalar.hpp"

namespace qlam {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// Immutable type tree: B, S(A), A ⊗ B, and Ψ ⇒ A.
///
/// Construction is unchecked except for arrow domains, which must be qubit
/// types. Use canonical_type (typesys.hpp) before comparing up to the
/// S(S(A)) = S(A) collapse or ⊗ reassociation.
class Type {
 public:
  enum class Kind { kBase, kSup, kTensor, kArrow };

  static Type base();
  static Type sup(Type inner);
  static Type tensor(Type left, Type right);
  /// Throws std::invalid_argument when `domain` is not a qubit type.
  static Type arrow(Type domain, Type codomain);

  /// Right-nested tensor of the given factors; requires a nonempty list.
  static Type tensor_of(const std::vector<Type>& factors);

  Kind kind() const;
  bool is_base() const { return kind() == Kind::kBase; }
  bool is_sup() const { return kind() == Kind::kSup; }
  bool is_tensor() const { return kind() == Kind::kTensor; }
  bool is_arrow() const { return kind() == Kind::kArrow; }

  const Type& inner() const;     // kSup
  const Type& left() const;      // kTensor
  const Type& right() const;     // kTensor
  const Type& domain() const;    // kArrow
  const Type& codomain() const;  // kArrow

  /// Exact structural equality (no canonicalization).
  bool operator==(const Type& o) const;

 private:
  friend class Term;
  struct Node;
  Type() = default;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar level Ψ: built from B, S(·) and ⊗, no arrow anywhere.
bool is_qubit_type(const Type& t);

/// Grammar level of base qubit types: ⊗-trees of B.
bool is_base_qubit_type(const Type& t);

/// Number of qubits of a qubit type (B counts 1). Throws for arrows.
int qubit_width(const Type& t);

/// Flattens the ⊗ spine (in both directions) into its factors.
std::vector<Type> tensor_factors(const Type& t);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term {
 public:
  enum class Kind {
    kVar,
    kLam,
    kApp,
    kKet0,
    kKet1,
    kIte,
    kSum,
    kScale,
    kNull,
    kTensor,
    kProj,
    kHead,
    kTail,
    kCast,
  };

  static Term var(std::string name);
  /// Throws std::invalid_argument when `annotation` is not a qubit type.
  static Term lam(std::string name, Type annotation, Term body);
  static Term app(Term fun, Term arg);
  static Term ket0();
  static Term ket1();
  static Term ket(int bit) { return bit ? ket1() : ket0(); }
  static Term ite();
  /// `if c then u else v` is ((ite c) u) v.
  static Term if_then_else(Term c, Term u, Term v);
  static Term sum(Term left, Term right);
  static Term scale(Scalar coef, Term body);
  /// The null vector of S(annotation).
  static Term null(Type annotation);
  static Term tensor(Term left, Term right);
  /// Right-nested tensor of the given factors; requires a nonempty list.
  static Term tensor_of(const std::vector<Term>& factors);
  /// Throws std::invalid_argument when j < 1.
  static Term proj(int j, Term body);
  static Term head(Term body);
  static Term tail(Term body);
  /// Cast from S(source) into S(target).
  static Term cast(Type source, Type target, Term body);

  Kind kind() const;

  const std::string& name() const;  // kVar, kLam
  const Type& annotation() const;   // kLam, kNull
  const Term& body() const;         // kLam, kScale, kProj, kHead, kTail, kCast
  const Term& fun() const;          // kApp
  const Term& arg() const;          // kApp
  const Term& left() const;         // kSum, kTensor
  const Term& right() const;        // kSum, kTensor
  const Scalar& coef() const;       // kScale
  int index() const;                // kProj
  const Type& source() const;       // kCast
  const Type& target() const;       // kCast

  bool is(Kind k) const { return kind() == k; }
  bool is_ket() const { return is(Kind::kKet0) || is(Kind::kKet1); }

  /// Pointer identity of the underlying node (cheap sharing test).
  bool same_node(const Term& o) const { return node_ == o.node_; }

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Structural equality; scalars compared with approx_eq at `eps`.
bool structurally_equal(const Term& a, const Term& b, double eps = kDefaultEpsilon);

/// Base terms: variables, abstractions, kets and tensors of base terms.
bool is_base_term(const Term& t);

/// Values: base terms, sums, null vectors, scaled values, tensors of values.
bool is_value(const Term& t);

std::set<std::string> free_vars(const Term& t);

bool is_closed(const Term& t);

/// Capture-avoiding (u/x)t.
Term substitute(const Term& t, const std::string& x, const Term& u);

/// Number of free occurrences of `x` in `t`.
int count_free(const Term& t, const std::string& x);

/// Node count, used to bound generated terms and to order shrink candidates.
std::size_t term_size(const Term& t);

}  // namespace qlam

#endif  // QLAM_SYNTAX_HPP
