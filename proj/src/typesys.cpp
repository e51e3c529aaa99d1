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

#include "qlam/typesys.hpp"

#include <stdexcept>
#include <vector>

namespace qlam {

Type canonical_type(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::kBase:
      return a;
    case Type::Kind::kSup: {
      Type inner = canonical_type(a.inner());
      return inner.is_sup() ? inner : Type::sup(std::move(inner));
    }
    case Type::Kind::kTensor: {
      std::vector<Type> factors;
      for (const Type& f : tensor_factors(a)) {
        Type c = canonical_type(f);
        // A canonical factor is never a tensor, so no second flattening is needed.
        factors.push_back(std::move(c));
      }
      return Type::tensor_of(factors);
    }
    case Type::Kind::kArrow:
      return Type::arrow(canonical_type(a.domain()), canonical_type(a.codomain()));
  }
  return a;
}

namespace {

bool all_qubit(const std::vector<Type>& fs) {
  for (const Type& f : fs) {
    if (!is_qubit_type(f)) return false;
  }
  return true;
}

// Splits `from` into consecutive groups whose widths match `to` factor by
// factor. Empty result when a factor of `from` straddles a boundary.
std::optional<std::vector<std::vector<Type>>> group_by_width(const std::vector<Type>& from,
                                                             const std::vector<Type>& to) {
  std::vector<std::vector<Type>> groups;
  std::size_t i = 0;
  for (const Type& target : to) {
    const int want = qubit_width(target);
    int have = 0;
    std::vector<Type> group;
    while (have < want && i < from.size()) {
      have += qubit_width(from[i]);
      group.push_back(from[i++]);
    }
    if (have != want) return std::nullopt;
    groups.push_back(std::move(group));
  }
  if (i != from.size()) return std::nullopt;
  return groups;
}

// Both arguments canonical.
bool sub(const Type& a, const Type& b) {
  if (a == b) return true;
  if (b.is_sup()) {
    return a.is_sup() ? sub(a.inner(), b.inner()) : sub(a, b.inner());
  }
  if (a.is_sup()) return false;
  if (a.is_arrow() && b.is_arrow()) {
    return a.domain() == b.domain() && sub(a.codomain(), b.codomain());
  }
  if (a.is_tensor() && b.is_tensor()) {
    const auto fa = tensor_factors(a);
    const auto fb = tensor_factors(b);
    if (!all_qubit(fa) || !all_qubit(fb)) {
      if (fa.size() != fb.size()) return false;
      for (std::size_t k = 0; k < fa.size(); ++k) {
        if (!sub(fa[k], fb[k])) return false;
      }
      return true;
    }
    const auto groups = group_by_width(fa, fb);
    if (!groups) return false;
    for (std::size_t k = 0; k < fb.size(); ++k) {
      const Type lhs = Type::tensor_of((*groups)[k]);
      if (!sub(lhs, fb[k])) return false;
    }
    return true;
  }
  return false;
}

std::optional<Type> join_canonical(const Type& a, const Type& b) {
  if (sub(a, b)) return b;
  if (sub(b, a)) return a;
  if (a.is_sup() || b.is_sup()) {
    const Type sa = a.is_sup() ? a.inner() : a;
    const Type sb = b.is_sup() ? b.inner() : b;
    auto j = join_canonical(sa, sb);
    if (!j) return std::nullopt;
    return canonical_type(Type::sup(*j));
  }
  if (a.is_arrow() && b.is_arrow()) {
    if (!(a.domain() == b.domain())) return std::nullopt;
    auto j = join_canonical(a.codomain(), b.codomain());
    if (!j) return std::nullopt;
    return Type::arrow(a.domain(), *j);
  }
  if (a.is_tensor() && b.is_tensor()) {
    const auto fa = tensor_factors(a);
    const auto fb = tensor_factors(b);
    if (!all_qubit(fa) || !all_qubit(fb)) {
      if (fa.size() != fb.size()) return std::nullopt;
      std::vector<Type> out;
      for (std::size_t k = 0; k < fa.size(); ++k) {
        auto j = join_canonical(fa[k], fb[k]);
        if (!j) return std::nullopt;
        out.push_back(*j);
      }
      return canonical_type(Type::tensor_of(out));
    }
    // Walk both factor lists, cutting at common width boundaries.
    std::vector<Type> out;
    std::size_t i = 0, k = 0;
    while (i < fa.size() && k < fb.size()) {
      std::vector<Type> ga{fa[i++]}, gb{fb[k++]};
      int wa = qubit_width(ga.back()), wb = qubit_width(gb.back());
      while (wa != wb) {
        if (wa < wb) {
          if (i >= fa.size()) return std::nullopt;
          ga.push_back(fa[i]);
          wa += qubit_width(fa[i++]);
        } else {
          if (k >= fb.size()) return std::nullopt;
          gb.push_back(fb[k]);
          wb += qubit_width(fb[k++]);
        }
      }
      if (ga.size() > 1 && gb.size() > 1) return std::nullopt;
      auto j = join_canonical(canonical_type(Type::tensor_of(ga)),
                              canonical_type(Type::tensor_of(gb)));
      if (!j) return std::nullopt;
      out.push_back(*j);
    }
    if (i != fa.size() || k != fb.size()) return std::nullopt;
    return canonical_type(Type::tensor_of(out));
  }
  return std::nullopt;
}

// A_k^S(x) from the Q_n^S definition; x is either B or S(y).
Type build_A(int k, std::set<int> s, const Type& x) {
  if (k == 0) {
    if (!s.empty()) throw std::logic_error("Q recursion left superposed positions");
    return x;
  }
  const bool in = s.erase(k) > 0;
  if (x.is_base()) {
    return in ? Type::tensor(build_A(k - 1, s, Type::sup(Type::base())), Type::base())
              : Type::tensor(build_A(k - 1, s, Type::base()), Type::base());
  }
  // x = S(y)
  return in ? build_A(k - 1, s, Type::sup(Type::tensor(Type::base(), x.inner())))
            : Type::tensor(build_A(k - 1, s, Type::base()), x);
}

}  // namespace

bool subtype(const Type& a, const Type& b) { return sub(canonical_type(a), canonical_type(b)); }

bool type_equivalent(const Type& a, const Type& b) { return subtype(a, b) && subtype(b, a); }

std::optional<Type> join(const Type& a, const Type& b) {
  return join_canonical(canonical_type(a), canonical_type(b));
}

bool is_valid(const QSpec& spec) {
  if (spec.n < 1) return false;
  for (int p : spec.superposed) {
    if (p < 1 || p > spec.n) return false;
  }
  return true;
}

Type build_Q(const QSpec& spec) {
  if (!is_valid(spec)) throw std::invalid_argument("invalid Q specification");
  std::set<int> s = spec.superposed;
  const bool last = s.erase(spec.n) > 0;
  const Type seed = last ? Type::sup(Type::base()) : Type::base();
  return canonical_type(build_A(spec.n - 1, s, seed));
}

std::optional<QSpec> recognize_Q(const Type& a) {
  const Type c = canonical_type(a);
  QSpec spec;
  spec.n = 0;
  for (const Type& f : tensor_factors(c)) {
    if (f.is_base()) {
      ++spec.n;
    } else if (f.is_sup() && is_base_qubit_type(f.inner())) {
      const int w = qubit_width(f.inner());
      for (int p = 1; p <= w; ++p) spec.superposed.insert(spec.n + p);
      spec.n += w;
    } else {
      return std::nullopt;
    }
  }
  if (!(build_Q(spec) == c)) return std::nullopt;
  return spec;
}

std::optional<CastSplit> cast_split(const Type& source, const Type& target) {
  const Type src = canonical_type(source);
  const Type tgt = canonical_type(target);
  if (!is_qubit_type(src) || !is_qubit_type(tgt)) return std::nullopt;
  const std::vector<Type> fs = tensor_factors(src);
  int width = 0;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    width += qubit_width(fs[i - 1]);
    const std::vector<Type> lf(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i));
    const std::vector<Type> rf(fs.begin() + static_cast<std::ptrdiff_t>(i), fs.end());
    const Type lhs = Type::tensor_of(lf);
    const Type rhs = Type::tensor_of(rf);
    if (lf.size() == 1 && lhs.is_sup() &&
        canonical_type(Type::tensor(lhs.inner(), rhs)) == tgt) {
      return CastSplit{true, width};
    }
    if (rf.size() == 1 && rhs.is_sup() &&
        canonical_type(Type::tensor(lhs, rhs.inner())) == tgt) {
      return CastSplit{false, width};
    }
  }
  return std::nullopt;
}

}  // namespace qlam
