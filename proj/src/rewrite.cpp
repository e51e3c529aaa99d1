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


#include "qlam/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"

namespace qlam {
namespace {

using K = Term::Kind;

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

bool contains_proj(const Term& t) {
  switch (t.kind()) {
    case K::kProj:
      return true;
    case K::kLam:
    case K::kScale:
    case K::kHead:
    case K::kTail:
    case K::kCast:
      return contains_proj(t.body());
    case K::kApp:
      return contains_proj(t.fun()) || contains_proj(t.arg());
    case K::kSum:
    case K::kTensor:
      return contains_proj(t.left()) || contains_proj(t.right());
    default:
      return false;
  }
}

struct Entry {
  Scalar coef;
  Term body;
};

void collect_linear(const Term& t, const Scalar& c, std::vector<Entry>& out,
                    std::optional<Type>& zero) {
  switch (t.kind()) {
    case K::kSum:
      collect_linear(t.left(), c, out, zero);
      collect_linear(t.right(), c, out, zero);
      return;
    case K::kScale:
      collect_linear(t.body(), c * t.coef(), out, zero);
      return;
    case K::kNull:
      if (!zero) zero = t.annotation();
      return;
    default:
      out.push_back({c, t});
  }
}

void flatten_tensor(const Term& t, std::vector<Term>& out) {
  if (t.is(K::kTensor)) {
    flatten_tensor(t.left(), out);
    flatten_tensor(t.right(), out);
  } else {
    out.push_back(t);
  }
}

// The null vector standing for a cancelled combination of `body`.
Term null_for(const Term& body) {
  try {
    Type a = canonical_type(infer(body));
    if (a.is_sup()) a = a.inner();
    return Term::null(a);
  } catch (const TypeError&) {
    return Term::null(Type::base());
  }
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const EngineConfig& cfg) : cfg_(cfg) {}

  Term run(const Term& t) {
    switch (t.kind()) {
      case K::kVar:
      case K::kLam:
      case K::kKet0:
      case K::kKet1:
      case K::kIte:
      case K::kNull:
        return t;
      case K::kApp:
        return Term::app(run(t.fun()), run(t.arg()));
      case K::kProj:
        return Term::proj(t.index(), run(t.body()));
      case K::kHead:
        return Term::head(run(t.body()));
      case K::kTail:
        return Term::tail(run(t.body()));
      case K::kCast:
        return Term::cast(t.source(), t.target(), run(t.body()));
      case K::kTensor: {
        std::vector<Term> raw, flat;
        flatten_tensor(t, raw);
        for (const Term& f : raw) flatten_tensor(run(f), flat);
        return Term::tensor_of(flat);
      }
      case K::kSum:
      case K::kScale:
        return linear(t);
    }
    return t;
  }

 private:
  Term linear(const Term& t) {
    std::vector<Entry> raw;
    std::optional<Type> zero;
    collect_linear(t, Scalar(1.0), raw, zero);

    std::vector<Entry> entries;
    for (const Entry& e : raw) {
      const Term body = run(e.body);
      if (body.is(K::kSum) || body.is(K::kScale) || body.is(K::kNull)) {
        std::vector<Entry> inner;
        collect_linear(body, e.coef, inner, zero);
        for (Entry& x : inner) add(entries, std::move(x));
      } else {
        add(entries, {e.coef, body});
      }
    }

    std::vector<std::pair<std::string, Entry>> kept;
    for (Entry& e : entries) {
      if (approx_zero(e.coef, cfg_.eps)) continue;
      std::string key = print(e.body);
      kept.emplace_back(std::move(key), std::move(e));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    if (kept.empty()) {
      if (zero) return Term::null(*zero);
      return raw.empty() ? Term::null(Type::base()) : null_for(raw.front().body);
    }
    std::optional<Term> acc;
    for (const auto& [key, e] : kept) {
      Term item = approx_one(e.coef, cfg_.eps) ? e.body : Term::scale(e.coef, e.body);
      acc = acc ? Term::sum(*acc, item) : item;
    }
    return *acc;
  }

  // Equal bodies are merged unless they still hold a measurement: merging
  // two independent measurements into one would change the distribution.
  void add(std::vector<Entry>& entries, Entry e) const {
    if (!contains_proj(e.body)) {
      for (Entry& x : entries) {
        if (structurally_equal(x.body, e.body, cfg_.eps)) {
          x.coef = x.coef + e.coef;
          return;
        }
      }
    }
    entries.push_back(std::move(e));
  }

  const EngineConfig& cfg_;
};

// ---------------------------------------------------------------------------
// Redexes
// ---------------------------------------------------------------------------

enum class Rule {
  kBetaB,
  kBetaN,
  kIf1,
  kIf0,
  kLinR,
  kLinScalR,
  kLin0R,
  kLinL,
  kLinScalL,
  kLin0L,
  kHead,
  kTail,
  kDistSumR,
  kDistSumL,
  kDistScalR,
  kDistScalL,
  kDistZeroR,
  kDistZeroL,
  kDistSumCast,
  kDistScalCast,
  kDistZeroCast,
  kNeutR,
  kNeutL,
  kProj,
};

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::kBetaB: return "beta_b";
    case Rule::kBetaN: return "beta_n";
    case Rule::kIf1: return "if1";
    case Rule::kIf0: return "if0";
    case Rule::kLinR: return "lin_r";
    case Rule::kLinScalR: return "lin_scal_r";
    case Rule::kLin0R: return "lin_0_r";
    case Rule::kLinL: return "lin_l";
    case Rule::kLinScalL: return "lin_scal_l";
    case Rule::kLin0L: return "lin_0_l";
    case Rule::kHead: return "head";
    case Rule::kTail: return "tail";
    case Rule::kDistSumR: return "dist_sum_r";
    case Rule::kDistSumL: return "dist_sum_l";
    case Rule::kDistScalR: return "dist_scal_r";
    case Rule::kDistScalL: return "dist_scal_l";
    case Rule::kDistZeroR: return "dist_zero_r";
    case Rule::kDistZeroL: return "dist_zero_l";
    case Rule::kDistSumCast: return "dist_sum_cast";
    case Rule::kDistScalCast: return "dist_scal_cast";
    case Rule::kDistZeroCast: return "dist_zero_cast";
    case Rule::kNeutR: return "neut_r";
    case Rule::kNeutL: return "neut_l";
    case Rule::kProj: return "proj";
  }
  return "?";
}

bool is_ite_family(const Term& f) {
  if (f.is(K::kIte)) return true;
  if (!f.is(K::kApp)) return false;
  if (f.fun().is(K::kIte)) return true;
  return f.fun().is(K::kApp) && f.fun().fun().is(K::kIte);
}

bool is_function_value(const Term& t) {
  switch (t.kind()) {
    case K::kLam:
    case K::kIte:
    case K::kNull:
      return true;
    case K::kApp:
      if (t.fun().is(K::kIte)) return is_base_term(t.arg());
      if (t.fun().is(K::kApp) && t.fun().fun().is(K::kIte)) {
        return is_base_term(t.fun().arg()) && is_base_term(t.arg());
      }
      return false;
    case K::kSum:
      return is_function_value(t.left()) && is_function_value(t.right());
    case K::kScale:
      return is_function_value(t.body());
    default:
      return false;
  }
}

// A sum argument is only split once it is a value. Splitting earlier would
// copy the function, and with it any measurement the function performs, once
// per unevaluated summand.
std::optional<Rule> linear_arg_rule(const Term& a) {
  switch (a.kind()) {
    case K::kSum: return is_value(a) ? std::optional<Rule>(Rule::kLinR) : std::nullopt;
    case K::kScale: return Rule::kLinScalR;
    case K::kNull: return Rule::kLin0R;
    default: return std::nullopt;
  }
}

int width_of(const Term& t) {
  switch (t.kind()) {
    case K::kKet0:
    case K::kKet1:
      return 1;
    case K::kTensor:
      return width_of(t.left()) + width_of(t.right());
    case K::kSum:
      return width_of(t.left());
    case K::kScale:
      return width_of(t.body());
    case K::kNull:
      return qubit_width(t.annotation());
    case K::kCast:
      return qubit_width(t.target());
    default:
      return qubit_width(infer(t));
  }
}

// Splits a tensor into the factors covering the first `width` qubits and the
// rest. Fails when no factor boundary falls at that width.
std::optional<std::pair<Term, Term>> split_tensor(const Term& t, int width) {
  std::vector<Term> fs;
  flatten_tensor(t, fs);
  int acc = 0;
  std::size_t i = 0;
  try {
    while (i < fs.size() && acc < width) acc += width_of(fs[i++]);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (acc != width || i == 0 || i == fs.size()) return std::nullopt;
  return std::make_pair(
      Term::tensor_of(std::vector<Term>(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i))),
      Term::tensor_of(std::vector<Term>(fs.begin() + static_cast<std::ptrdiff_t>(i), fs.end())));
}

struct CastView {
  bool superposed_left;
  Term left;
  Term right;
  const Term& side() const { return superposed_left ? left : right; }
};

std::optional<CastView> view_cast(const Term& t) {
  if (!t.body().is(K::kTensor)) return std::nullopt;
  auto split = cast_split(t.source(), t.target());
  if (!split) return std::nullopt;
  auto parts = split_tensor(t.body(), split->left_width);
  if (!parts) return std::nullopt;
  return CastView{split->superposed_left, parts->first, parts->second};
}

std::optional<Rule> top_rule(const Term& t) {
  switch (t.kind()) {
    case K::kApp: {
      const Term& f = t.fun();
      const Term& a = t.arg();
      if (f.is(K::kApp) && f.fun().is(K::kApp) && f.fun().fun().is(K::kIte)) {
        const Term& c = f.fun().arg();
        if (c.is(K::kKet1)) return Rule::kIf1;
        if (c.is(K::kKet0)) return Rule::kIf0;
      }
      if (!is_function_value(f)) return std::nullopt;
      if (f.is(K::kLam)) {
        if (!is_base_qubit_type(f.annotation())) return Rule::kBetaN;
        if (is_base_term(a)) return Rule::kBetaB;
        return linear_arg_rule(a);
      }
      if (is_ite_family(f)) return linear_arg_rule(a);
      if (f.is(K::kSum)) return is_value(a) ? std::optional<Rule>(Rule::kLinL) : std::nullopt;
      if (f.is(K::kScale)) return Rule::kLinScalL;
      if (f.is(K::kNull)) return Rule::kLin0L;
      return std::nullopt;
    }
    case K::kHead:
    case K::kTail: {
      const Term& b = t.body();
      if (b.is(K::kTensor) && is_base_term(b.left()) && !b.left().is(K::kTensor)) {
        return t.is(K::kHead) ? Rule::kHead : Rule::kTail;
      }
      return std::nullopt;
    }
    case K::kCast: {
      const Term& b = t.body();
      if (b.is(K::kSum)) return Rule::kDistSumCast;
      if (b.is(K::kScale)) return Rule::kDistScalCast;
      if (b.is(K::kNull)) return Rule::kDistZeroCast;
      auto v = view_cast(t);
      if (!v) return std::nullopt;
      const Term& s = v->side();
      const bool r = v->superposed_left;
      if (s.is(K::kSum)) {
        // The other factor gets copied, so it has to be fully evaluated first.
        const Term& other = r ? v->right : v->left;
        if (!is_value(other)) return std::nullopt;
        return r ? Rule::kDistSumR : Rule::kDistSumL;
      }
      if (s.is(K::kScale)) return r ? Rule::kDistScalR : Rule::kDistScalL;
      if (s.is(K::kNull)) return r ? Rule::kDistZeroR : Rule::kDistZeroL;
      if (is_base_term(s)) return r ? Rule::kNeutR : Rule::kNeutL;
      return std::nullopt;
    }
    case K::kProj:
      if (is_value(t.body())) return Rule::kProj;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

Distribution certain(Term t) { return {Outcome{1.0, std::move(t)}}; }

Term null_of_result(const Term& t) {
  Type a = canonical_type(infer(t));
  if (a.is_sup()) a = a.inner();
  return Term::null(a);
}

Distribution apply_rule(Rule r, const Term& t, const EngineConfig& cfg) {
  const bool swap = cfg.mutation == Mutation::kSwapIte;
  switch (r) {
    case Rule::kBetaB:
    case Rule::kBetaN:
      return certain(substitute(t.fun().body(), t.fun().name(), t.arg()));
    case Rule::kIf1:
      return certain(swap ? t.arg() : t.fun().arg());
    case Rule::kIf0:
      return certain(swap ? t.fun().arg() : t.arg());
    case Rule::kLinR:
      return certain(Term::sum(Term::app(t.fun(), t.arg().left()),
                               Term::app(t.fun(), t.arg().right())));
    case Rule::kLinScalR: {
      Scalar c = t.arg().coef();
      if (cfg.mutation == Mutation::kDropNegation && c.re() < 0) c = -c;
      return certain(Term::scale(c, Term::app(t.fun(), t.arg().body())));
    }
    case Rule::kLin0R:
    case Rule::kLin0L:
      return certain(null_of_result(t));
    case Rule::kLinL:
      return certain(Term::sum(Term::app(t.fun().left(), t.arg()),
                               Term::app(t.fun().right(), t.arg())));
    case Rule::kLinScalL:
      return certain(Term::scale(t.fun().coef(), Term::app(t.fun().body(), t.arg())));
    case Rule::kHead:
      return certain(t.body().left());
    case Rule::kTail:
      return certain(t.body().right());
    case Rule::kDistSumCast:
      return certain(Term::sum(Term::cast(t.source(), t.target(), t.body().left()),
                               Term::cast(t.source(), t.target(), t.body().right())));
    case Rule::kDistScalCast:
      return certain(
          Term::scale(t.body().coef(), Term::cast(t.source(), t.target(), t.body().body())));
    case Rule::kDistZeroCast:
    case Rule::kDistZeroR:
    case Rule::kDistZeroL:
      return certain(Term::null(t.target()));
    case Rule::kDistSumR:
    case Rule::kDistSumL:
    case Rule::kDistScalR:
    case Rule::kDistScalL: {
      const CastView v = *view_cast(t);
      const Term& s = v.side();
      auto rebuild = [&](const Term& part) {
        const Term body = v.superposed_left ? Term::tensor(part, v.right)
                                            : Term::tensor(v.left, part);
        return Term::cast(t.source(), t.target(), body);
      };
      if (s.is(K::kSum)) return certain(Term::sum(rebuild(s.left()), rebuild(s.right())));
      return certain(Term::scale(s.coef(), rebuild(s.body())));
    }
    case Rule::kNeutR:
    case Rule::kNeutL:
      return certain(t.body());
    case Rule::kProj:
      return measure(t.index(), t.body(), cfg);
  }
  throw std::logic_error("unhandled rule");
}

struct Reduction {
  Rule rule;
  Distribution outcomes;
};

template <typename F>
std::optional<Reduction> wrap(std::optional<Reduction> r, F&& rebuild) {
  if (r) {
    for (Outcome& o : r->outcomes) o.term = rebuild(o.term);
  }
  return r;
}

std::optional<Reduction> reduce(const Term& t, const EngineConfig& cfg) {
  if (auto r = top_rule(t)) return Reduction{*r, apply_rule(*r, t, cfg)};
  switch (t.kind()) {
    case K::kApp: {
      const Term& f = t.fun();
      const Term& a = t.arg();
      if (!is_function_value(f)) {
        if (auto r = reduce(f, cfg)) {
          return wrap(std::move(r), [&](const Term& u) { return Term::app(u, a); });
        }
      }
      return wrap(reduce(a, cfg), [&](const Term& u) { return Term::app(f, u); });
    }
    case K::kSum:
    case K::kTensor: {
      if (auto r = reduce(t.left(), cfg)) {
        const bool sum = t.is(K::kSum);
        const Term& rhs = t.right();
        return wrap(std::move(r), [&](const Term& u) {
          return sum ? Term::sum(u, rhs) : Term::tensor(u, rhs);
        });
      }
      const bool sum = t.is(K::kSum);
      const Term& lhs = t.left();
      return wrap(reduce(t.right(), cfg), [&](const Term& u) {
        return sum ? Term::sum(lhs, u) : Term::tensor(lhs, u);
      });
    }
    case K::kScale:
      return wrap(reduce(t.body(), cfg),
                  [&](const Term& u) { return Term::scale(t.coef(), u); });
    case K::kProj:
      return wrap(reduce(t.body(), cfg), [&](const Term& u) { return Term::proj(t.index(), u); });
    case K::kHead:
      return wrap(reduce(t.body(), cfg), [](const Term& u) { return Term::head(u); });
    case K::kTail:
      return wrap(reduce(t.body(), cfg), [](const Term& u) { return Term::tail(u); });
    case K::kCast:
      return wrap(reduce(t.body(), cfg),
                  [&](const Term& u) { return Term::cast(t.source(), t.target(), u); });
    default:
      return std::nullopt;
  }
}

// Multilinear expansion of a value into weighted computational-basis states.
using Expansion = std::vector<std::pair<Scalar, std::vector<int>>>;

Expansion expand(const Term& v) {
  switch (v.kind()) {
    case K::kKet0:
      return {{Scalar(1.0), {0}}};
    case K::kKet1:
      return {{Scalar(1.0), {1}}};
    case K::kNull:
      return {};
    case K::kScale: {
      Expansion e = expand(v.body());
      for (auto& [c, bits] : e) c = v.coef() * c;
      return e;
    }
    case K::kSum: {
      Expansion e = expand(v.left());
      Expansion r = expand(v.right());
      e.insert(e.end(), r.begin(), r.end());
      return e;
    }
    case K::kTensor: {
      const Expansion l = expand(v.left());
      const Expansion r = expand(v.right());
      Expansion out;
      out.reserve(l.size() * r.size());
      for (const auto& [a, x] : l) {
        for (const auto& [b, y] : r) {
          std::vector<int> bits = x;
          bits.insert(bits.end(), y.begin(), y.end());
          out.emplace_back(a * b, std::move(bits));
        }
      }
      return out;
    }
    default:
      throw RewriteError("cannot measure non-qubit term " + print(v));
  }
}

Term kets(std::vector<int>::const_iterator first, std::vector<int>::const_iterator last) {
  std::vector<Term> fs;
  for (auto it = first; it != last; ++it) fs.push_back(Term::ket(*it));
  return Term::tensor_of(fs);
}

}  // namespace

Term canonicalize(const Term& t, const EngineConfig& cfg) { return Canonicalizer(cfg).run(t); }

std::string classify_redex(const Term& t, const EngineConfig&) {
  try {
    auto r = top_rule(t);
    return r ? rule_name(*r) : "none";
  } catch (const std::exception&) {
    return "none";
  }
}

bool is_normal_form(const Term& t) { return is_value(t) || is_function_value(t); }

std::optional<StepResult> step(const Term& t, const EngineConfig& cfg) {
  const Term c = canonicalize(t, cfg);
  if (!structurally_equal(c, t, 0.0)) return StepResult{"canon", certain(c)};
  auto r = reduce(c, cfg);
  if (r) return StepResult{rule_name(r->rule), std::move(r->outcomes)};
  if (is_normal_form(c)) return std::nullopt;
  throw RewriteError("stuck term: " + print(c));
}

Distribution measure(int j, const Term& value, const EngineConfig& cfg) {
  std::map<std::vector<int>, Scalar> merged;
  for (auto& [c, bits] : expand(value)) {
    auto [it, fresh] = merged.emplace(bits, c);
    if (!fresh) it->second = it->second + c;
  }
  std::size_t m = 0;
  double total = 0.0;
  for (auto it = merged.begin(); it != merged.end();) {
    if (m == 0) m = it->first.size();
    if (it->first.size() != m) throw RewriteError("measured value mixes register widths");
    if (approx_zero(it->second, cfg.eps)) {
      it = merged.erase(it);
      continue;
    }
    total += modulus_sq(it->second);
    ++it;
  }
  if (merged.empty() || total <= 0.0) throw RewriteError("measurement of the null vector");
  if (j < 1 || static_cast<std::size_t>(j) > m) {
    throw RewriteError("cannot measure " + std::to_string(j) + " qubits of a " +
                       std::to_string(m) + "-qubit register");
  }

  // std::map iterates in lexicographic bit order, so groups are contiguous.
  Distribution out;
  auto it = merged.begin();
  while (it != merged.end()) {
    const std::vector<int> prefix(it->first.begin(), it->first.begin() + j);
    auto end = it;
    double weight = 0.0;
    while (end != merged.end() && std::equal(prefix.begin(), prefix.end(), end->first.begin())) {
      weight += modulus_sq(end->second);
      ++end;
    }
    Term term = kets(prefix.begin(), prefix.end());
    if (static_cast<std::size_t>(j) < m) {
      const double norm = std::sqrt(weight);
      std::optional<Term> rest;
      for (auto g = it; g != end; ++g) {
        Term item = Term::scale(g->second / Scalar(norm),
                                kets(g->first.begin() + j, g->first.end()));
        rest = rest ? Term::sum(*rest, item) : item;
      }
      term = Term::tensor(term, *rest);
    }
    out.push_back({weight / total, canonicalize(term, cfg)});
    it = end;
  }
  return out;
}

std::string Trace::render() const {
  std::string out;
  for (const TraceStep& s : steps) {
    out += "[" + s.rule + " p=" + format_double(s.p) + "] " + print(s.before) + " ⟶ " +
           print(s.after) + "\n";
  }
  return out;
}

RunResult run_distribution(const Term& t, std::size_t fuel, const EngineConfig& cfg) {
  struct Branch {
    double p;
    Term term;
    std::size_t depth;
  };
  RunResult result;
  std::deque<Branch> frontier{{1.0, t, 0}};
  while (!frontier.empty()) {
    Branch b = std::move(frontier.front());
    frontier.pop_front();
    auto s = step(b.term, cfg);
    if (!s) {
      result.max_depth = std::max(result.max_depth, b.depth);
      result.leaves.push_back({b.p, b.term});
      continue;
    }
    if (b.depth >= fuel) {
      throw RewriteError("fuel exhausted after " + std::to_string(fuel) +
                         " steps; partial term: " + print(b.term));
    }
    for (Outcome& o : s->outcomes) {
      frontier.push_back({b.p * o.p, std::move(o.term), b.depth + 1});
    }
  }
  for (const Outcome& leaf : result.leaves) {
    auto same = std::find_if(
        result.distribution.begin(), result.distribution.end(),
        [&](const Outcome& o) { return structurally_equal(o.term, leaf.term, cfg.eps); });
    if (same == result.distribution.end()) {
      result.distribution.push_back(leaf);
    } else {
      same->p += leaf.p;
    }
  }
  return result;
}

SampleResult sample(const Term& t, std::uint64_t seed, std::size_t fuel, const EngineConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleResult out{t, {}};
  for (std::size_t n = 0;; ++n) {
    auto s = step(out.result, cfg);
    if (!s) return out;
    if (n >= fuel) {
      throw RewriteError("fuel exhausted after " + std::to_string(fuel) +
                         " steps; partial term: " + print(out.result));
    }
    std::size_t pick = 0;
    if (s->outcomes.size() > 1) {
      const double u = unit(rng);
      double acc = 0.0;
      pick = s->outcomes.size() - 1;
      for (std::size_t k = 0; k < s->outcomes.size(); ++k) {
        acc += s->outcomes[k].p;
        if (u < acc) {
          pick = k;
          break;
        }
      }
    }
    Outcome& chosen = s->outcomes[pick];
    out.trace.steps.push_back({s->rule, chosen.p, out.result, chosen.term});
    out.result = chosen.term;
  }
}

}  // namespace qlam
