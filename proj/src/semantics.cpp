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


#include "qlam/semantics.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <variant>

#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"

namespace qlam {

DenVector DenVector::basis(int width, std::size_t index) {
  DenVector v = zero(width);
  v.amps.at(index) = 1.0;
  return v;
}

DenVector DenVector::zero(int width) {
  if (width < 0 || width > 20) throw SemanticsError("register too wide to denote");
  return DenVector{width, std::vector<Amplitude>(std::size_t{1} << width, 0.0)};
}

namespace {

using K = Term::Kind;

// Guards against blow-up of pointwise set operations.
constexpr std::size_t kMaxSetSize = 4096;

bool vec_close(const DenVector& a, const DenVector& b, double eps) {
  if (a.width != b.width) return false;
  for (std::size_t i = 0; i < a.amps.size(); ++i) {
    if (std::abs(a.amps[i].real() - b.amps[i].real()) > eps ||
        std::abs(a.amps[i].imag() - b.amps[i].imag()) > eps) {
      return false;
    }
  }
  return true;
}

DenVector vec_add(const DenVector& a, const DenVector& b) {
  if (a.width != b.width) throw SemanticsError("adding vectors of different widths");
  DenVector out = a;
  for (std::size_t i = 0; i < out.amps.size(); ++i) out.amps[i] += b.amps[i];
  return out;
}

DenVector vec_scale(Amplitude c, DenVector v) {
  for (Amplitude& x : v.amps) x *= c;
  return v;
}

DenVector vec_kron(const DenVector& a, const DenVector& b) {
  DenVector out = DenVector::zero(a.width + b.width);
  for (std::size_t i = 0; i < a.amps.size(); ++i) {
    for (std::size_t j = 0; j < b.amps.size(); ++j) {
      out.amps[i * b.amps.size() + j] = a.amps[i] * b.amps[j];
    }
  }
  return out;
}

struct Elem;
using Env = std::map<std::string, Elem>;

// One function in a linear combination: an abstraction closed over its
// environment, or the `ite` constant with the arguments received so far.
struct Fn {
  std::optional<Term> lam;
  Env env;
  TypingContext types;
  std::vector<Elem> ite_args;
};

// An element of a denotation: a vector, or a linear combination of functions.
struct Elem {
  std::variant<DenVector, std::vector<std::pair<Amplitude, std::shared_ptr<const Fn>>>> v;

  bool is_vec() const { return v.index() == 0; }
  const DenVector& vec() const { return std::get<0>(v); }
  const auto& fns() const { return std::get<1>(v); }
};

using ElemSet = std::vector<Elem>;

Elem make_fn(std::shared_ptr<const Fn> f) {
  return Elem{std::vector<std::pair<Amplitude, std::shared_ptr<const Fn>>>{{1.0, std::move(f)}}};
}

Elem elem_add(const Elem& a, const Elem& b) {
  if (a.is_vec() && b.is_vec()) return Elem{vec_add(a.vec(), b.vec())};
  if (a.is_vec() || b.is_vec()) throw SemanticsError("adding a vector to a function");
  auto out = a.fns();
  out.insert(out.end(), b.fns().begin(), b.fns().end());
  return Elem{std::move(out)};
}

Elem elem_scale(Amplitude c, const Elem& a) {
  if (a.is_vec()) return Elem{vec_scale(c, a.vec())};
  auto out = a.fns();
  for (auto& [k, f] : out) k *= c;
  return Elem{std::move(out)};
}

void dedupe(ElemSet& s, double eps) {
  ElemSet out;
  for (Elem& e : s) {
    bool dup = false;
    if (e.is_vec()) {
      for (const Elem& o : out) {
        if (o.is_vec() && vec_close(o.vec(), e.vec(), eps)) {
          dup = true;
          break;
        }
      }
    }
    if (!dup) out.push_back(std::move(e));
  }
  s = std::move(out);
}

template <typename F>
ElemSet pointwise(const ElemSet& a, const ElemSet& b, F&& op, double eps) {
  if (a.size() * b.size() > kMaxSetSize) throw SemanticsError("denotation set too large");
  ElemSet out;
  for (const Elem& x : a) {
    for (const Elem& y : b) out.push_back(op(x, y));
  }
  dedupe(out, eps);
  return out;
}

class Denoter {
 public:
  explicit Denoter(double eps) : eps_(eps) {}

  ElemSet run(const Term& t, const Env& env, const TypingContext& types) {
    switch (t.kind()) {
      case K::kVar: {
        auto it = env.find(t.name());
        if (it == env.end()) throw SemanticsError("free variable '" + t.name() + "'");
        return {it->second};
      }
      case K::kKet0:
        return {Elem{DenVector::basis(1, 0)}};
      case K::kKet1:
        return {Elem{DenVector::basis(1, 1)}};
      case K::kNull:
        return {zero_of(t.annotation())};
      case K::kLam: {
        auto f = std::make_shared<Fn>();
        f->lam = t;
        f->env = env;
        f->types = types;
        return {make_fn(std::move(f))};
      }
      case K::kIte:
        return {make_fn(std::make_shared<Fn>())};
      case K::kSum:
        return pointwise(run(t.left(), env, types), run(t.right(), env, types), elem_add, eps_);
      case K::kScale: {
        ElemSet s = run(t.body(), env, types);
        for (Elem& e : s) e = elem_scale(t.coef().value(), e);
        return s;
      }
      case K::kTensor:
        return pointwise(
            run(t.left(), env, types), run(t.right(), env, types),
            [](const Elem& a, const Elem& b) {
              if (!a.is_vec() || !b.is_vec()) throw SemanticsError("tensor of functions");
              return Elem{vec_kron(a.vec(), b.vec())};
            },
            eps_);
      case K::kCast:
        return run(t.body(), env, types);
      case K::kHead:
      case K::kTail:
        return list_op(t, run(t.body(), env, types));
      case K::kProj:
        return proj(t.index(), run(t.body(), env, types));
      case K::kApp: {
        const ElemSet fs = run(t.fun(), env, types);
        const ElemSet xs = run(t.arg(), env, types);
        const Type result = canonical_type(infer_subterm(types, t));
        ElemSet out;
        for (const Elem& f : fs) {
          for (const Elem& x : xs) {
            ElemSet r = apply(f, x, result);
            out.insert(out.end(), r.begin(), r.end());
            if (out.size() > kMaxSetSize) throw SemanticsError("denotation set too large");
          }
        }
        dedupe(out, eps_);
        return out;
      }
    }
    throw SemanticsError("unknown term");
  }

 private:
  Elem zero_of(const Type& a) const {
    const Type c = canonical_type(a);
    const Type inner = c.is_sup() ? c.inner() : c;
    if (is_qubit_type(inner)) return Elem{DenVector::zero(qubit_width(inner))};
    return Elem{std::vector<std::pair<Amplitude, std::shared_ptr<const Fn>>>{}};
  }

  ElemSet list_op(const Term& t, const ElemSet& body) const {
    ElemSet out;
    for (const Elem& e : body) {
      if (!e.is_vec() || e.vec().width < 2) throw SemanticsError("head/tail of a non-list");
      const DenVector& v = e.vec();
      std::optional<std::size_t> idx;
      for (std::size_t i = 0; i < v.amps.size(); ++i) {
        if (std::abs(v.amps[i]) > eps_) {
          if (idx) throw SemanticsError("head/tail of a superposition");
          idx = i;
        }
      }
      if (!idx) throw SemanticsError("head/tail of the null vector");
      const std::size_t rest = std::size_t{1} << (v.width - 1);
      const DenVector h = DenVector::basis(1, *idx / rest);
      const DenVector tl = vec_scale(v.amps[*idx], DenVector::basis(v.width - 1, *idx % rest));
      out.push_back(Elem{t.is(K::kHead) ? vec_scale(v.amps[*idx], h) : tl});
    }
    dedupe(out, eps_);
    return out;
  }

  ElemSet proj(int j, const ElemSet& body) const {
    ElemSet out;
    for (const Elem& e : body) {
      if (!e.is_vec()) throw SemanticsError("measuring a function");
      const DenVector& v = e.vec();
      if (j > v.width) throw SemanticsError("measuring more qubits than the register has");
      const int rest_w = v.width - j;
      const std::size_t rest = std::size_t{1} << rest_w;
      bool any = false;
      for (std::size_t prefix = 0; prefix < (std::size_t{1} << j); ++prefix) {
        double weight = 0.0;
        for (std::size_t r = 0; r < rest; ++r) {
          const Amplitude a = v.amps[prefix * rest + r];
          if (std::abs(a.real()) > eps_ || std::abs(a.imag()) > eps_) weight += std::norm(a);
        }
        if (weight <= 0.0) continue;
        any = true;
        if (rest_w == 0) {
          out.push_back(Elem{DenVector::basis(j, prefix)});
          continue;
        }
        DenVector tail = DenVector::zero(rest_w);
        const double norm = std::sqrt(weight);
        for (std::size_t r = 0; r < rest; ++r) {
          const Amplitude a = v.amps[prefix * rest + r];
          if (std::abs(a.real()) > eps_ || std::abs(a.imag()) > eps_) tail.amps[r] = a / norm;
        }
        out.push_back(Elem{vec_kron(DenVector::basis(j, prefix), tail)});
      }
      if (!any) throw SemanticsError("measuring the null vector");
    }
    dedupe(out, eps_);
    return out;
  }

  // Applies a combination of functions to one argument element; the result
  // type fixes the width of a null result.
  ElemSet apply(const Elem& f, const Elem& x, const Type& result) {
    if (f.is_vec()) throw SemanticsError("applying a vector");
    const Type res_inner = result.is_sup() ? result.inner() : result;
    ElemSet acc{zero_of(res_inner)};
    for (const auto& [c, fn] : f.fns()) {
      ElemSet r = apply_one(*fn, x, res_inner);
      for (Elem& e : r) e = elem_scale(c, e);
      acc = pointwise(acc, r, elem_add, eps_);
    }
    return acc;
  }

  ElemSet apply_one(const Fn& fn, const Elem& x, const Type& result) {
    const bool is_ite = !fn.lam.has_value();
    const bool base_domain = is_ite || is_base_qubit_type(fn.lam->annotation());
    // The condition of ite and every base-typed parameter distribute over
    // the computational basis; the other ite arguments are taken whole.
    if (is_ite && !fn.ite_args.empty()) {
      auto next = std::make_shared<Fn>(fn);
      next->ite_args.push_back(x);
      if (next->ite_args.size() < 3) return {make_fn(std::move(next))};
      const DenVector& c = next->ite_args[0].vec();
      return {c.amps[1] == Amplitude(1.0) ? next->ite_args[1] : next->ite_args[2]};
    }
    if (!base_domain) return body(fn, x);
    if (!x.is_vec()) throw SemanticsError("function passed to a base parameter");
    const DenVector& v = x.vec();
    ElemSet acc{zero_of(result)};
    for (std::size_t i = 0; i < v.amps.size(); ++i) {
      const Amplitude a = v.amps[i];
      if (std::abs(a.real()) <= eps_ && std::abs(a.imag()) <= eps_) continue;
      const Elem e{DenVector::basis(v.width, i)};
      ElemSet r;
      if (is_ite) {
        auto next = std::make_shared<Fn>(fn);
        next->ite_args.push_back(e);
        r = {make_fn(std::move(next))};
      } else {
        r = body(fn, e);
      }
      for (Elem& y : r) y = elem_scale(a, y);
      acc = pointwise(acc, r, elem_add, eps_);
    }
    return acc;
  }

  ElemSet body(const Fn& fn, const Elem& x) {
    Env env = fn.env;
    env.insert_or_assign(fn.lam->name(), x);
    TypingContext types = fn.types;
    types.insert_or_assign(fn.lam->name(), canonical_type(fn.lam->annotation()));
    return run(fn.lam->body(), env, types);
  }

  double eps_;
};

bool is_basis_like(const DenVector& v, double eps, std::size_t* idx) {
  bool found = false;
  for (std::size_t i = 0; i < v.amps.size(); ++i) {
    if (std::abs(v.amps[i]) > eps) {
      if (found) return false;
      found = true;
      *idx = i;
    }
  }
  return found;
}

}  // namespace

DenSet denote(const Term& t, const Valuation& phi, double eps) {
  Denoter d(eps);
  // Enumerate every choice of one element per free variable.
  std::vector<std::pair<Env, TypingContext>> envs{{Env{}, TypingContext{}}};
  for (const auto& [name, set] : phi) {
    if (set.empty()) return {};
    std::vector<std::pair<Env, TypingContext>> next;
    for (const auto& [env, types] : envs) {
      for (const DenVector& v : set) {
        Env e = env;
        e.insert_or_assign(name, Elem{v});
        TypingContext ty = types;
        ty.insert_or_assign(name, Type::sup(Type::tensor_of(
                                      std::vector<Type>(static_cast<std::size_t>(v.width),
                                                        Type::base()))));
        next.emplace_back(std::move(e), std::move(ty));
      }
    }
    envs = std::move(next);
  }
  DenSet out;
  for (const auto& [env, types] : envs) {
    for (const Elem& e : d.run(t, env, types)) {
      if (!e.is_vec()) throw SemanticsError("term denotes a function");
      bool dup = false;
      for (const DenVector& o : out) dup = dup || vec_close(o, e.vec(), eps);
      if (!dup) out.push_back(e.vec());
    }
  }
  return out;
}

bool denote_type_membership(const Type& a, const DenVector& v, double eps) {
  const Type c = canonical_type(a);
  if (!is_qubit_type(c)) throw SemanticsError("membership is only defined for qubit types");
  if (qubit_width(c) != v.width) return false;
  if (c.is_sup()) return true;
  const std::vector<Type> factors = tensor_factors(c);
  bool has_sup = false;
  for (const Type& f : factors) has_sup = has_sup || f.is_sup();

  double scale = 0.0;
  for (const Amplitude& x : v.amps) scale = std::max(scale, std::abs(x));
  if (scale <= eps) return has_sup;

  // Peel factors off the front, checking that each cut is rank one and that
  // base factors carry a definite bit.
  DenVector rest = v;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const int w = qubit_width(factors[k]);
    const bool base = factors[k].is_base();
    if (k + 1 == factors.size()) {
      if (!base) return true;
      std::size_t idx = 0;
      if (!is_basis_like(rest, eps, &idx)) return false;
      return has_sup || std::abs(rest.amps[idx] - Amplitude(1.0)) <= eps;
    }
    const std::size_t rows = std::size_t{1} << w;
    const std::size_t cols = rest.amps.size() / rows;
    std::size_t pi = 0, pj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const double m = std::abs(rest.amps[i * cols + j]);
        if (m > best) {
          best = m;
          pi = i;
          pj = j;
        }
      }
    }
    const Amplitude pivot = rest.amps[pi * cols + pj];
    DenVector row = DenVector::zero(rest.width - w);
    for (std::size_t j = 0; j < cols; ++j) row.amps[j] = rest.amps[pi * cols + j];
    for (std::size_t i = 0; i < rows; ++i) {
      const Amplitude u = rest.amps[i * cols + pj] / pivot;
      if (base && i != pi && std::abs(u) > eps) return false;
      for (std::size_t j = 0; j < cols; ++j) {
        if (std::abs(rest.amps[i * cols + j] - u * row.amps[j]) > eps) return false;
      }
    }
    rest = std::move(row);
  }
  return true;
}

bool denset_equal(const DenSet& a, const DenSet& b, double eps) {
  auto covered = [eps](const DenSet& xs, const DenSet& ys) {
    for (const DenVector& x : xs) {
      bool hit = false;
      for (const DenVector& y : ys) {
        if (vec_close(x, y, eps)) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

bool check_soundness(const Term& t, double eps) {
  const Type a = infer(t);
  for (const DenVector& v : denote(t, {}, eps)) {
    if (!denote_type_membership(a, v, eps)) return false;
  }
  return true;
}

bool check_reduction_commutes(const Term& t, const EngineConfig& cfg) {
  auto s = step(t, cfg);
  if (!s) return true;
  const DenSet lhs = denote(t, {}, cfg.eps);
  DenSet rhs;
  for (const Outcome& o : s->outcomes) {
    for (DenVector& v : denote(o.term, {}, cfg.eps)) rhs.push_back(std::move(v));
  }
  return denset_equal(lhs, rhs, cfg.eps);
}

}  // namespace qlam
