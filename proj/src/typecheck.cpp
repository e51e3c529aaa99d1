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


#include "qlam/typecheck.hpp"

#include <optional>
#include <vector>

#include "qlam/surface.hpp"
#include "qlam/typesys.hpp"

namespace qlam {

const char* to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::kUnboundVariable: return "unbound variable";
    case TypeErrorKind::kLinearReused: return "linear variable reused";
    case TypeErrorKind::kLinearDropped: return "linear variable dropped";
    case TypeErrorKind::kDomainMismatch: return "domain mismatch";
    case TypeErrorKind::kNotAFunction: return "not a function";
    case TypeErrorKind::kNotQType: return "not a Q-type under pi";
    case TypeErrorKind::kBadCastShape: return "bad cast shape";
    case TypeErrorKind::kAnnotationMismatch: return "annotation mismatch";
  }
  return "type error";
}

TypeError::TypeError(TypeErrorKind kind, std::string location, std::string detail)
    : std::runtime_error(std::string(to_string(kind)) +
                         (location.empty() ? std::string() : " at " + location) + ": " + detail),
      kind_(kind),
      location_(std::move(location)),
      detail_(std::move(detail)) {}

namespace {

// Widest register for which the minimal Q type under pi is found by search.
constexpr int kMaxSearchWidth = 12;

std::string child(const std::string& path, const char* seg) {
  return path.empty() ? std::string(seg) : path + "." + seg;
}

bool is_linear(const Type& a) { return !is_base_qubit_type(a); }

// Every rule of the system splits its context multiplicatively and only
// base-typed variables may be weakened or contracted, so a variable of any
// other type must occur free exactly once in its scope.
void check_usage(const std::string& x, const Term& scope, const std::string& path) {
  const int n = count_free(scope, x);
  if (n == 1) return;
  if (n == 0) {
    throw TypeError(TypeErrorKind::kLinearDropped, path, "variable '" + x + "' is never used");
  }
  throw TypeError(TypeErrorKind::kLinearReused, path,
                  "variable '" + x + "' is used " + std::to_string(n) + " times");
}

class Checker {
 public:
  explicit Checker(TypingContext ctx) : ctx_(std::move(ctx)) {}

  Type run(const Term& t, const std::string& path) {
    switch (t.kind()) {
      case Term::Kind::kVar: {
        auto it = ctx_.find(t.name());
        if (it == ctx_.end()) {
          throw TypeError(TypeErrorKind::kUnboundVariable, path, "'" + t.name() + "'");
        }
        return it->second;
      }
      case Term::Kind::kLam:
        return lam(t, path);
      case Term::Kind::kApp:
        return app(t, path);
      case Term::Kind::kKet0:
      case Term::Kind::kKet1:
        return Type::base();
      case Term::Kind::kIte: {
        const Type b = Type::base();
        return Type::arrow(b, Type::arrow(b, Type::arrow(b, b)));
      }
      case Term::Kind::kSum: {
        const Type a = run(t.left(), child(path, "left"));
        const Type b = run(t.right(), child(path, "right"));
        auto j = join(a, b);
        if (!j) {
          throw TypeError(TypeErrorKind::kDomainMismatch, path,
                          "summands have incompatible types " + print(a) + " and " + print(b));
        }
        return canonical_type(Type::sup(*j));
      }
      case Term::Kind::kScale:
        return canonical_type(Type::sup(run(t.body(), child(path, "body"))));
      case Term::Kind::kNull:
        return canonical_type(Type::sup(t.annotation()));
      case Term::Kind::kTensor: {
        const Type a = run(t.left(), child(path, "left"));
        const Type b = run(t.right(), child(path, "right"));
        return canonical_type(Type::tensor(a, b));
      }
      case Term::Kind::kProj:
        return proj(t, path);
      case Term::Kind::kHead:
      case Term::Kind::kTail:
        return list_op(t, path);
      case Term::Kind::kCast:
        return cast(t, path);
    }
    throw std::logic_error("unknown term kind");
  }

 private:
  Type lam(const Term& t, const std::string& path) {
    const std::string& x = t.name();
    const Type ann = canonical_type(t.annotation());
    if (is_linear(ann)) check_usage(x, t.body(), path);
    std::optional<Type> saved;
    if (auto it = ctx_.find(x); it != ctx_.end()) saved = it->second;
    ctx_.insert_or_assign(x, ann);
    std::optional<Type> body;
    try {
      body = run(t.body(), child(path, "body"));
    } catch (...) {
      restore(x, saved);
      throw;
    }
    restore(x, saved);
    return canonical_type(Type::arrow(ann, *body));
  }

  void restore(const std::string& x, const std::optional<Type>& saved) {
    if (saved) {
      ctx_.insert_or_assign(x, *saved);
    } else {
      ctx_.erase(x);
    }
  }

  Type app(const Term& t, const std::string& path) {
    const Type f = canonical_type(run(t.fun(), child(path, "fun")));
    const Type a = run(t.arg(), child(path, "arg"));
    const Type* arrow = nullptr;
    if (f.is_arrow()) {
      arrow = &f;
    } else if (f.is_sup() && f.inner().is_arrow()) {
      arrow = &f.inner();
    }
    if (arrow == nullptr) {
      throw TypeError(TypeErrorKind::kNotAFunction, child(path, "fun"),
                      "applied term has type " + print(f));
    }
    const Type& dom = arrow->domain();
    if (f.is_arrow() && subtype(a, dom)) return arrow->codomain();
    if (subtype(a, Type::sup(dom))) return canonical_type(Type::sup(arrow->codomain()));
    throw TypeError(TypeErrorKind::kDomainMismatch, child(path, "arg"),
                    "expected " + print(dom) + ", got " + print(a));
  }

  Type proj(const Term& t, const std::string& path) {
    const Type body = canonical_type(run(t.body(), child(path, "body")));
    auto fail = [&](const std::string& why) -> Type {
      throw TypeError(TypeErrorKind::kNotQType, path, print(body) + " " + why);
    };
    if (!is_qubit_type(body)) fail("is not a qubit type");
    const int n = qubit_width(body);
    std::optional<QSpec> best;
    if (auto exact = recognize_Q(body)) {
      best = exact;
    } else if (n <= kMaxSearchWidth) {
      // Least Q type above the body: fewest superposed positions wins, and
      // among equals the first one found is below the others by construction.
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        QSpec s{n, {}};
        for (int p = 0; p < n; ++p) {
          if (mask & (1u << p)) s.superposed.insert(p + 1);
        }
        if (best && best->superposed.size() <= s.superposed.size()) continue;
        if (subtype(body, build_Q(s))) best = s;
      }
    }
    if (!best) fail("is not below any Q type");
    if (t.index() > best->n) {
      fail("has " + std::to_string(best->n) + " qubits, cannot measure " +
           std::to_string(t.index()));
    }
    QSpec out = *best;
    for (int p = 1; p <= t.index(); ++p) out.superposed.erase(p);
    return build_Q(out);
  }

  Type list_op(const Term& t, const std::string& path) {
    const Type body = canonical_type(run(t.body(), child(path, "body")));
    if (!is_base_qubit_type(body) || !body.is_tensor()) {
      throw TypeError(TypeErrorKind::kDomainMismatch, child(path, "body"),
                      std::string(t.is(Term::Kind::kHead) ? "head" : "tail") +
                          " expects a base tensor, got " + print(body));
    }
    // Canonical tensors are right nested, so the left factor is a single qubit.
    return t.is(Term::Kind::kHead) ? body.left() : body.right();
  }

  Type cast(const Term& t, const std::string& path) {
    if (!cast_split(t.source(), t.target())) {
      throw TypeError(TypeErrorKind::kBadCastShape, path,
                      "cannot cast " + print(t.source()) + " to " + print(t.target()));
    }
    cast_body(t.source(), t.body(), child(path, "body"));
    return canonical_type(Type::sup(t.target()));
  }

  // The body must have type S(source), possibly via the sum and scaling
  // rules that push the cast through linear combinations.
  void cast_body(const Type& source, const Term& body, const std::string& path) {
    std::optional<TypeError> err;
    try {
      const Type a = run(body, path);
      if (subtype(a, Type::sup(source))) return;
      err = TypeError(TypeErrorKind::kBadCastShape, path,
                      "cast operand has type " + print(a) + ", not below " +
                          print(Type::sup(source)));
    } catch (const TypeError& e) {
      if (!body.is(Term::Kind::kSum) && !body.is(Term::Kind::kScale)) throw;
      err = e;
    }
    if (body.is(Term::Kind::kSum)) {
      cast_body(source, body.left(), child(path, "left"));
      cast_body(source, body.right(), child(path, "right"));
      return;
    }
    if (body.is(Term::Kind::kScale)) {
      cast_body(source, body.body(), child(path, "body"));
      return;
    }
    throw *err;
  }

  TypingContext ctx_;
};

}  // namespace

Type infer(const TypingContext& ctx, const Term& t) {
  for (const auto& [name, type] : ctx) {
    if (!is_qubit_type(type)) {
      throw TypeError(TypeErrorKind::kAnnotationMismatch, "",
                      "context binds '" + name + "' at non-qubit type " + print(type));
    }
    if (is_linear(type)) check_usage(name, t, "");
  }
  return Checker(ctx).run(t, "");
}

Type infer_subterm(const TypingContext& ctx, const Term& t) { return Checker(ctx).run(t, ""); }

bool check(const TypingContext& ctx, const Term& t, const Type& a) {
  return subtype(infer(ctx, t), a);
}

}  // namespace qlam
