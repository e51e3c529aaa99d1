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

#include "qlam/syntax.hpp"

#include <atomic>
#include <stdexcept>

namespace qlam {

// ---------------------------------------------------------------------------
// Type
// ---------------------------------------------------------------------------

struct Type::Node {
  Kind kind;
  Type a;
  Type b;
};

Type Type::base() {
  static const Type b(std::make_shared<const Node>(Node{Kind::kBase, {}, {}}));
  return b;
}

Type Type::sup(Type inner) {
  return Type(std::make_shared<const Node>(Node{Kind::kSup, std::move(inner), {}}));
}

Type Type::tensor(Type left, Type right) {
  return Type(std::make_shared<const Node>(
      Node{Kind::kTensor, std::move(left), std::move(right)}));
}

Type Type::arrow(Type domain, Type codomain) {
  if (!is_qubit_type(domain)) {
    throw std::invalid_argument("arrow domain must be a qubit type");
  }
  return Type(std::make_shared<const Node>(
      Node{Kind::kArrow, std::move(domain), std::move(codomain)}));
}

Type Type::tensor_of(const std::vector<Type>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty tensor of types");
  Type acc = factors.back();
  for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) {
    acc = tensor(*it, acc);
  }
  return acc;
}

Type::Kind Type::kind() const { return node_->kind; }
const Type& Type::inner() const { return node_->a; }
const Type& Type::left() const { return node_->a; }
const Type& Type::right() const { return node_->b; }
const Type& Type::domain() const { return node_->a; }
const Type& Type::codomain() const { return node_->b; }

bool Type::operator==(const Type& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::kBase:
      return true;
    case Kind::kSup:
      return inner() == o.inner();
    case Kind::kTensor:
    case Kind::kArrow:
      return node_->a == o.node_->a && node_->b == o.node_->b;
  }
  return false;
}

bool is_qubit_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::kBase:
      return true;
    case Type::Kind::kSup:
      return is_qubit_type(t.inner());
    case Type::Kind::kTensor:
      return is_qubit_type(t.left()) && is_qubit_type(t.right());
    case Type::Kind::kArrow:
      return false;
  }
  return false;
}

bool is_base_qubit_type(const Type& t) {
  if (t.is_base()) return true;
  if (t.is_tensor()) return is_base_qubit_type(t.left()) && is_base_qubit_type(t.right());
  return false;
}

int qubit_width(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::kBase:
      return 1;
    case Type::Kind::kSup:
      return qubit_width(t.inner());
    case Type::Kind::kTensor:
      return qubit_width(t.left()) + qubit_width(t.right());
    case Type::Kind::kArrow:
      break;
  }
  throw std::invalid_argument("qubit width of an arrow type");
}

namespace {
void collect_factors(const Type& t, std::vector<Type>& out) {
  if (t.is_tensor()) {
    collect_factors(t.left(), out);
    collect_factors(t.right(), out);
  } else {
    out.push_back(t);
  }
}
}  // namespace

std::vector<Type> tensor_factors(const Type& t) {
  std::vector<Type> out;
  collect_factors(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

struct Term::Node {
  Kind kind;
  std::string name;
  Type ty1;  // lambda annotation, null annotation, cast source
  Type ty2;  // cast target
  Scalar coef;
  int index = 0;
  Term a;
  Term b;
};

Term Term::var(std::string name) {
  Node n{Kind::kVar, std::move(name), {}, {}, {}, 0, {}, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::lam(std::string name, Type annotation, Term body) {
  if (!is_qubit_type(annotation)) {
    throw std::invalid_argument("abstraction annotation must be a qubit type");
  }
  Node n{Kind::kLam, std::move(name), std::move(annotation), {}, {}, 0, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::app(Term fun, Term arg) {
  Node n{Kind::kApp, {}, {}, {}, {}, 0, std::move(fun), std::move(arg)};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::ket0() {
  static const Term k(std::make_shared<const Node>(Node{Kind::kKet0, {}, {}, {}, {}, 0, {}, {}}));
  return k;
}

Term Term::ket1() {
  static const Term k(std::make_shared<const Node>(Node{Kind::kKet1, {}, {}, {}, {}, 0, {}, {}}));
  return k;
}

Term Term::ite() {
  static const Term k(std::make_shared<const Node>(Node{Kind::kIte, {}, {}, {}, {}, 0, {}, {}}));
  return k;
}

Term Term::if_then_else(Term c, Term u, Term v) {
  return app(app(app(ite(), std::move(c)), std::move(u)), std::move(v));
}

Term Term::sum(Term left, Term right) {
  Node n{Kind::kSum, {}, {}, {}, {}, 0, std::move(left), std::move(right)};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::scale(Scalar coef, Term body) {
  Node n{Kind::kScale, {}, {}, {}, coef, 0, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::null(Type annotation) {
  Node n{Kind::kNull, {}, std::move(annotation), {}, {}, 0, {}, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::tensor(Term left, Term right) {
  Node n{Kind::kTensor, {}, {}, {}, {}, 0, std::move(left), std::move(right)};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::tensor_of(const std::vector<Term>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty tensor of terms");
  Term acc = factors.back();
  for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) {
    acc = tensor(*it, acc);
  }
  return acc;
}

Term Term::proj(int j, Term body) {
  if (j < 1) throw std::invalid_argument("projection index must be positive");
  Node n{Kind::kProj, {}, {}, {}, {}, j, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::head(Term body) {
  Node n{Kind::kHead, {}, {}, {}, {}, 0, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::tail(Term body) {
  Node n{Kind::kTail, {}, {}, {}, {}, 0, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::cast(Type source, Type target, Term body) {
  Node n{Kind::kCast, {}, std::move(source), std::move(target), {}, 0, std::move(body), {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::annotation() const { return node_->ty1; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
const Term& Term::left() const { return node_->a; }
const Term& Term::right() const { return node_->b; }
const Scalar& Term::coef() const { return node_->coef; }
int Term::index() const { return node_->index; }
const Type& Term::source() const { return node_->ty1; }
const Type& Term::target() const { return node_->ty2; }

bool structurally_equal(const Term& a, const Term& b, double eps) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  using K = Term::Kind;
  switch (a.kind()) {
    case K::kVar:
      return a.name() == b.name();
    case K::kLam:
      return a.name() == b.name() && a.annotation() == b.annotation() &&
             structurally_equal(a.body(), b.body(), eps);
    case K::kApp:
      return structurally_equal(a.fun(), b.fun(), eps) &&
             structurally_equal(a.arg(), b.arg(), eps);
    case K::kKet0:
    case K::kKet1:
    case K::kIte:
      return true;
    case K::kSum:
    case K::kTensor:
      return structurally_equal(a.left(), b.left(), eps) &&
             structurally_equal(a.right(), b.right(), eps);
    case K::kScale:
      return approx_eq(a.coef(), b.coef(), eps) && structurally_equal(a.body(), b.body(), eps);
    case K::kNull:
      return a.annotation() == b.annotation();
    case K::kProj:
      return a.index() == b.index() && structurally_equal(a.body(), b.body(), eps);
    case K::kHead:
    case K::kTail:
      return structurally_equal(a.body(), b.body(), eps);
    case K::kCast:
      return a.source() == b.source() && a.target() == b.target() &&
             structurally_equal(a.body(), b.body(), eps);
  }
  return false;
}

bool is_base_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kLam:
    case Term::Kind::kKet0:
    case Term::Kind::kKet1:
      return true;
    case Term::Kind::kTensor:
      return is_base_term(t.left()) && is_base_term(t.right());
    default:
      return false;
  }
}

bool is_value(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kSum:
    case Term::Kind::kTensor:
      return is_value(t.left()) && is_value(t.right());
    case Term::Kind::kNull:
      return true;
    case Term::Kind::kScale:
      return is_value(t.body());
    default:
      return is_base_term(t);
  }
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::kVar:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case K::kLam: {
      const bool fresh = bound.insert(t.name()).second;
      collect_free(t.body(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    case K::kApp:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case K::kSum:
    case K::kTensor:
      collect_free(t.left(), bound, out);
      collect_free(t.right(), bound, out);
      return;
    case K::kScale:
    case K::kProj:
    case K::kHead:
    case K::kTail:
    case K::kCast:
      collect_free(t.body(), bound, out);
      return;
    case K::kKet0:
    case K::kKet1:
    case K::kIte:
    case K::kNull:
      return;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  static std::atomic<unsigned> counter{0};
  for (;;) {
    std::string candidate = base + "_" + std::to_string(counter++);
    if (!avoid.count(candidate)) return candidate;
  }
}

// Rebuilds a unary/binary node around new children, preserving everything else.
Term rebuild(const Term& t, const Term& a, const Term& b) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::kLam:
      return Term::lam(t.name(), t.annotation(), a);
    case K::kApp:
      return Term::app(a, b);
    case K::kSum:
      return Term::sum(a, b);
    case K::kTensor:
      return Term::tensor(a, b);
    case K::kScale:
      return Term::scale(t.coef(), a);
    case K::kProj:
      return Term::proj(t.index(), a);
    case K::kHead:
      return Term::head(a);
    case K::kTail:
      return Term::tail(a);
    case K::kCast:
      return Term::cast(t.source(), t.target(), a);
    default:
      return t;
  }
}

Term subst(const Term& t, const std::string& x, const Term& u, const std::set<std::string>& fv_u) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::kVar:
      return t.name() == x ? u : t;
    case K::kLam: {
      if (t.name() == x) return t;
      if (fv_u.count(t.name()) && count_free(t.body(), x) > 0) {
        std::set<std::string> avoid = free_vars(t.body());
        avoid.insert(fv_u.begin(), fv_u.end());
        const std::string y = fresh_name(t.name(), avoid);
        const Term renamed = subst(t.body(), t.name(), Term::var(y), {});
        return Term::lam(y, t.annotation(), subst(renamed, x, u, fv_u));
      }
      return Term::lam(t.name(), t.annotation(), subst(t.body(), x, u, fv_u));
    }
    case K::kApp:
      return Term::app(subst(t.fun(), x, u, fv_u), subst(t.arg(), x, u, fv_u));
    case K::kSum:
    case K::kTensor:
      return rebuild(t, subst(t.left(), x, u, fv_u), subst(t.right(), x, u, fv_u));
    case K::kScale:
    case K::kProj:
    case K::kHead:
    case K::kTail:
    case K::kCast:
      return rebuild(t, subst(t.body(), x, u, fv_u), t);
    case K::kKet0:
    case K::kKet1:
    case K::kIte:
    case K::kNull:
      return t;
  }
  return t;
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

Term substitute(const Term& t, const std::string& x, const Term& u) {
  if (count_free(t, x) == 0) return t;
  return subst(t, x, u, free_vars(u));
}

int count_free(const Term& t, const std::string& x) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::kVar:
      return t.name() == x ? 1 : 0;
    case K::kLam:
      return t.name() == x ? 0 : count_free(t.body(), x);
    case K::kApp:
      return count_free(t.fun(), x) + count_free(t.arg(), x);
    case K::kSum:
    case K::kTensor:
      return count_free(t.left(), x) + count_free(t.right(), x);
    case K::kScale:
    case K::kProj:
    case K::kHead:
    case K::kTail:
    case K::kCast:
      return count_free(t.body(), x);
    case K::kKet0:
    case K::kKet1:
    case K::kIte:
    case K::kNull:
      return 0;
  }
  return 0;
}

std::size_t term_size(const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::kLam:
    case K::kScale:
    case K::kProj:
    case K::kHead:
    case K::kTail:
    case K::kCast:
      return 1 + term_size(t.body());
    case K::kApp:
      return 1 + term_size(t.fun()) + term_size(t.arg());
    case K::kSum:
    case K::kTensor:
      return 1 + term_size(t.left()) + term_size(t.right());
    default:
      return 1;
  }
}

}  // namespace qlam
