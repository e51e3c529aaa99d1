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


#include "qlam/properties.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qlam/semantics.hpp"
#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"

namespace qlam {

namespace {

Type bits(int n) { return Type::tensor_of(std::vector<Type>(n, Type::base())); }

bool same_type(const Type& a, const Type& b) { return canonical_type(a) == canonical_type(b); }

// Number of leading B factors of a register type and the width of the rest,
// if the rest is a single S(B^k) factor or empty.
std::optional<int> measured_prefix(const Type& goal) {
  const std::vector<Type> fs = tensor_factors(canonical_type(goal));
  int j = 0;
  while (j < static_cast<int>(fs.size()) && fs[j].is_base()) ++j;
  if (j == static_cast<int>(fs.size())) return j;
  if (j == 0 || j + 1 != static_cast<int>(fs.size())) return std::nullopt;
  if (!fs[j].is_sup() || !is_base_qubit_type(fs[j].inner())) return std::nullopt;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

TermGenerator::TermGenerator(std::uint64_t seed, GenBudget budget)
    : rng_(seed), budget_(budget) {}

int TermGenerator::pick(int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng_);
}

bool TermGenerator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string TermGenerator::fresh() { return "x" + std::to_string(counter_++); }

Scalar TermGenerator::scalar() {
  static const double r = 1.0 / std::sqrt(2.0);
  static const Scalar table[] = {
      Scalar(1.0),  Scalar(-1.0), Scalar(r),   Scalar(-r),       Scalar(0.5),
      Scalar(0, 1), Scalar(2.0),  Scalar(0.6), Scalar(0.8),      Scalar(0.5, 0.5),
      Scalar(0, -r)};
  return table[pick(static_cast<int>(std::size(table)))];
}

Type TermGenerator::goal_type() {
  const Type b = Type::base();
  auto s = [](Type t) { return Type::sup(std::move(t)); };
  auto x = [](Type l, Type r) { return Type::tensor(std::move(l), std::move(r)); };
  std::vector<Type> goals = {b, s(b)};
  if (budget_.max_qubits >= 2) {
    goals.insert(goals.end(), {x(b, b), x(s(b), b), x(b, s(b)), x(s(b), s(b)), s(x(b, b))});
  }
  if (budget_.max_qubits >= 3) {
    goals.insert(goals.end(), {bits(3), x(b, x(b, s(b))), x(b, s(x(b, b))), x(s(b), x(b, b)),
                               s(bits(3)), x(s(b), x(s(b), s(b))), x(b, x(s(b), b))});
  }
  return canonical_type(goals[pick(static_cast<int>(goals.size()))]);
}

Term TermGenerator::generate(const Type& goal) {
  counter_ = 0;
  return gen(canonical_type(goal), budget_.max_depth, {});
}

Term TermGenerator::gen(const Type& goal, int depth, const Env& env) {
  if (is_base_qubit_type(goal)) return gen_base(goal, depth, env);
  if (goal.is_sup()) return gen_sup(goal, depth, env);
  return gen_mixed(goal, depth, env);
}

Term TermGenerator::superposition(int width, bool allow_zero_terms) {
  const std::size_t dim = std::size_t{1} << width;
  const int k = 1 + pick(static_cast<int>(std::min<std::size_t>(3, dim)));
  std::vector<std::size_t> idx;
  while (static_cast<int>(idx.size()) < k) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng_);
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
  }
  std::optional<Term> acc;
  for (std::size_t i : idx) {
    std::vector<Term> ks;
    for (int q = width - 1; q >= 0; --q) ks.push_back(Term::ket(static_cast<int>((i >> q) & 1)));
    Scalar c = scalar();
    if (allow_zero_terms && coin(0.05)) c = Scalar(0.0);
    Term piece = Term::scale(c, Term::tensor_of(ks));
    acc = acc ? Term::sum(*acc, piece) : piece;
  }
  return *acc;
}

Term TermGenerator::gen_base(const Type& goal, int depth, const Env& env) {
  const int w = qubit_width(goal);
  std::vector<std::function<Term()>> leaves;
  leaves.push_back([&] {
    std::vector<Term> ks;
    for (int q = 0; q < w; ++q) ks.push_back(Term::ket(pick(2)));
    return Term::tensor_of(ks);
  });
  for (const Var& v : env) {
    if (same_type(v.type, goal)) leaves.push_back([&] { return Term::var(v.name); });
    if (w == 1 && qubit_width(v.type) == 2) {
      leaves.push_back([&] { return coin() ? Term::head(Term::var(v.name)) : Term::tail(Term::var(v.name)); });
    }
  }
  if (depth <= 0 || coin(0.2)) return leaves[pick(static_cast<int>(leaves.size()))]();

  const int d = depth - 1;
  switch (pick(6)) {
    case 0:
      if (w == 1) return Term::if_then_else(gen(goal, d, env), gen(goal, d, env), gen(goal, d, env));
      return Term::tensor(gen(Type::base(), d, env), gen(bits(w - 1), d, env));
    case 1:
      if (w < budget_.max_qubits) {
        if (w == 1 && coin()) return Term::head(gen(bits(2), d, env));
        return Term::tail(gen(bits(w + 1), d, env));
      }
      return measured(goal, depth, env);
    case 2:
    case 3:
      return measured(goal, depth, env);
    default:
      return lambda_app(goal, depth, env);
  }
}

Term TermGenerator::gen_sup(const Type& goal, int depth, const Env& env) {
  const Type inner = goal.inner();
  const int w = qubit_width(inner);
  if (depth <= 0 || coin(0.15)) {
    const int r = pick(10);
    if (r == 0) return Term::null(inner);
    if (r < 4) return gen(inner, 0, env);
    return superposition(w, true);
  }
  const int d = depth - 1;
  auto part = [&] { return coin(0.6) ? gen(goal, d, env) : gen(inner, d, env); };
  switch (pick(8)) {
    case 0:
      return Term::scale(scalar(), part());
    case 1:
      return Term::sum(part(), part());
    case 2:
      return lambda_app(goal, depth, env);
    case 3:
      return linear_app(goal, depth, env);
    case 4:
      if (w >= 2) {
        const int k = 1 + pick(w - 1);
        const bool sup_left = coin();
        const Type source = sup_left ? Type::tensor(Type::sup(bits(k)), bits(w - k))
                                     : Type::tensor(bits(k), Type::sup(bits(w - k)));
        return Term::cast(canonical_type(source), inner, gen(canonical_type(source), d, env));
      }
      return Term::if_then_else(gen(Type::base(), d, env), part(), part());
    case 5: {
      const std::string x = fresh();
      const std::string y = fresh();
      Env ex = env;
      ex.push_back({x, Type::base()});
      Env ey = env;
      ey.push_back({y, Type::base()});
      Term f = Term::sum(Term::lam(x, Type::base(), gen(inner, d, ex)),
                         Term::lam(y, Type::base(), gen(inner, d, ey)));
      if (coin(0.3)) f = Term::scale(scalar(), f);
      return Term::app(f, gen(Type::base(), d, env));
    }
    case 6:
      if (w == 1) {
        return Term::app(Term::app(Term::app(Term::ite(), gen(goal, d, env)), gen(inner, d, env)),
                         gen(inner, d, env));
      }
      return Term::sum(part(), part());
    default:
      return superposition(w, true);
  }
}

Term TermGenerator::gen_mixed(const Type& goal, int depth, const Env& env) {
  const std::vector<Type> fs = tensor_factors(goal);
  auto split = [&] {
    const int k = 1 + pick(static_cast<int>(fs.size()) - 1);
    const Type l = Type::tensor_of({fs.begin(), fs.begin() + k});
    const Type r = Type::tensor_of({fs.begin() + k, fs.end()});
    const int d = std::max(depth - 1, 0);
    return Term::tensor(gen(l, d, env), gen(r, d, env));
  };
  if (depth <= 0) return split();
  switch (pick(5)) {
    case 0:
      if (measured_prefix(goal)) return measured(goal, depth, env);
      return split();
    case 1:
      return lambda_app(goal, depth, env);
    case 2:
      return linear_app(goal, depth, env);
    default:
      return split();
  }
}

Term TermGenerator::measured(const Type& goal, int depth, const Env& env) {
  const std::optional<int> j = measured_prefix(goal);
  if (!j) throw std::logic_error("goal is not a measurement result type");
  const int n = qubit_width(goal);
  const Type body = Type::sup(bits(n));
  if (depth <= 1 || coin(0.6)) return Term::proj(*j, superposition(n, false));
  return Term::proj(*j, gen(canonical_type(body), depth - 1, env));
}

Term TermGenerator::lambda_app(const Type& goal, int depth, const Env& env) {
  const int d = depth - 1;
  const int pw = budget_.max_qubits >= 2 && coin(0.3) ? 2 : 1;
  const Type psi = bits(pw);
  const std::string x = fresh();
  Env inner = env;
  inner.push_back({x, psi});
  Term body = gen(goal, d, inner);
  Term arg = goal.is_sup() && coin() ? gen(canonical_type(Type::sup(psi)), d, env) : gen(psi, d, env);
  return Term::app(Term::lam(x, psi, body), arg);
}

Term TermGenerator::linear_app(const Type& goal, int depth, const Env& env) {
  const int d = depth - 1;
  const Type sb = Type::sup(Type::base());
  const std::string x = fresh();
  const Term v = Term::var(x);
  std::optional<Term> body;
  if (same_type(goal, sb)) {
    switch (pick(4)) {
      case 0:
        body = v;
        break;
      case 1:
        body = Term::scale(scalar(), v);
        break;
      case 2:
        body = coin() ? Term::sum(v, gen(sb, d, env)) : Term::sum(gen(Type::base(), d, env), v);
        break;
      default: {
        const std::string y = fresh();
        Env ey = env;
        ey.push_back({y, Type::base()});
        body = Term::app(Term::lam(y, Type::base(), gen(Type::base(), d, ey)), v);
      }
    }
  } else if (goal.is_sup() && qubit_width(goal) >= 2) {
    const int w = qubit_width(goal);
    const Type rest = bits(w - 1);
    const Term other = gen(rest, d, env);
    body = coin() ? Term::cast(canonical_type(Type::tensor(sb, rest)), goal.inner(), Term::tensor(v, other))
                  : Term::cast(canonical_type(Type::tensor(rest, sb)), goal.inner(), Term::tensor(other, v));
  } else if (goal.is_tensor()) {
    const std::vector<Type> fs = tensor_factors(goal);
    if (same_type(fs.front(), sb)) {
      body = Term::tensor(v, gen(Type::tensor_of({fs.begin() + 1, fs.end()}), d, env));
    } else if (same_type(fs.back(), sb)) {
      body = Term::tensor(gen(Type::tensor_of({fs.begin(), fs.end() - 1}), d, env), v);
    }
  }
  if (!body) return lambda_app(goal, depth, env);
  return Term::app(Term::lam(x, sb, *body), gen(sb, d, env));
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

std::size_t PropertyReport::total_violations() const {
  std::size_t n = 0;
  for (const auto& [_, c] : violations) n += c;
  return n;
}

namespace {

constexpr double kProbTolerance = 1e-9;
constexpr std::size_t kMaxNodes = 20000;

struct Node {
  Term term;
  Type type;
  std::size_t depth;
  double path_p;
  std::optional<DenSet> den;
};

using Violation = std::pair<std::string, std::string>;

}  // namespace

std::optional<Violation> check_term(const Term& t, const EngineConfig& cfg, std::size_t fuel,
                                    std::size_t* steps, bool* qubit_typed) {
  const Type root_type = infer(t);
  const bool qubit = is_qubit_type(root_type);
  if (qubit_typed) *qubit_typed = qubit;

  std::deque<Node> frontier;
  frontier.push_back({t, root_type, 0, 1.0, std::nullopt});
  if (qubit) frontier.back().den = denote(t, {}, cfg.eps);
  double leaf_mass = 0.0;
  std::size_t visited = 0;

  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (++visited > kMaxNodes) throw RewriteError("reduction tree too large");

    if (node.den) {
      for (const DenVector& v : *node.den) {
        if (!denote_type_membership(node.type, v, cfg.eps)) {
          return Violation{kSoundness, print(node.term) + " has a denotation outside " + print(node.type)};
        }
      }
    }

    std::optional<StepResult> s = step(node.term, cfg);
    if (!s) {
      leaf_mass += node.path_p;
      continue;
    }
    if (steps) ++*steps;
    if (node.depth >= fuel) throw RewriteError("fuel exhausted");

    double total = 0.0;
    for (const Outcome& o : s->outcomes) {
      if (o.p < -kProbTolerance || o.p > 1.0 + kProbTolerance) {
        return Violation{kProbability, "rule " + s->rule + " produced probability " + format_double(o.p)};
      }
      total += o.p;
    }
    if (std::abs(total - 1.0) > kProbTolerance) {
      return Violation{kProbability, "rule " + s->rule + " on " + print(node.term) +
                                         " has outcome mass " + format_double(total)};
    }

    DenSet rhs;
    for (const Outcome& o : s->outcomes) {
      std::optional<Type> rt;
      try {
        rt = infer(o.term);
      } catch (const TypeError& e) {
        return Violation{kSubjectReduction, "rule " + s->rule + " produced ill-typed " + print(o.term) +
                                                ": " + e.what()};
      }
      if (!subtype(*rt, node.type)) {
        return Violation{kSubjectReduction, "rule " + s->rule + " turned " + print(node.type) + " into " +
                                                print(*rt)};
      }
      Node child{o.term, *rt, node.depth + 1, node.path_p * o.p, std::nullopt};
      if (node.den) {
        child.den = denote(o.term, {}, cfg.eps);
        rhs.insert(rhs.end(), child.den->begin(), child.den->end());
      }
      frontier.push_back(std::move(child));
    }
    if (node.den && !denset_equal(*node.den, rhs, cfg.eps)) {
      return Violation{kCommutation, "rule " + s->rule + " changed the denotation of " + print(node.term)};
    }
  }

  if (std::abs(leaf_mass - 1.0) > kProbTolerance) {
    return Violation{kProbability, "final distribution has mass " + format_double(leaf_mass)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shrinking
// ---------------------------------------------------------------------------

namespace {

std::vector<Term> children(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kLam:
    case Term::Kind::kScale:
    case Term::Kind::kProj:
    case Term::Kind::kHead:
    case Term::Kind::kTail:
    case Term::Kind::kCast:
      return {t.body()};
    case Term::Kind::kApp:
      return {t.fun(), t.arg()};
    case Term::Kind::kSum:
    case Term::Kind::kTensor:
      return {t.left(), t.right()};
    default:
      return {};
  }
}

Term rebuild(const Term& t, const std::vector<Term>& cs) {
  switch (t.kind()) {
    case Term::Kind::kLam:
      return Term::lam(t.name(), t.annotation(), cs[0]);
    case Term::Kind::kScale:
      return Term::scale(t.coef(), cs[0]);
    case Term::Kind::kProj:
      return Term::proj(t.index(), cs[0]);
    case Term::Kind::kHead:
      return Term::head(cs[0]);
    case Term::Kind::kTail:
      return Term::tail(cs[0]);
    case Term::Kind::kCast:
      return Term::cast(t.source(), t.target(), cs[0]);
    case Term::Kind::kApp:
      return Term::app(cs[0], cs[1]);
    case Term::Kind::kSum:
      return Term::sum(cs[0], cs[1]);
    case Term::Kind::kTensor:
      return Term::tensor(cs[0], cs[1]);
    default:
      return t;
  }
}

// Every term obtained by one local simplification somewhere inside `t`.
std::vector<Term> shrink_candidates(const Term& t) {
  std::vector<Term> out;
  const std::vector<Term> cs = children(t);
  if (!t.is(Term::Kind::kLam)) {
    for (const Term& c : cs) out.push_back(c);
    if (!t.is_ket() && !t.is(Term::Kind::kVar)) {
      out.push_back(Term::ket0());
      out.push_back(Term::ket1());
    }
  }
  if (t.is(Term::Kind::kScale) && !approx_one(t.coef())) out.push_back(t.body());
  if (t.is(Term::Kind::kApp) && t.fun().is(Term::Kind::kLam)) {
    out.push_back(substitute(t.fun().body(), t.fun().name(), t.arg()));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (const Term& v : shrink_candidates(cs[i])) {
      std::vector<Term> next = cs;
      next[i] = v;
      out.push_back(rebuild(t, next));
    }
  }
  return out;
}

bool still_fails(const Term& t, const std::string& property, const EngineConfig& cfg, std::size_t fuel) {
  if (!is_closed(t)) return false;
  try {
    const auto v = check_term(t, cfg, fuel);
    return v && v->first == property;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Term shrink(const Term& t, const std::string& property, const EngineConfig& cfg, std::size_t fuel) {
  Term best = t;
  for (int round = 0; round < 200; ++round) {
    bool improved = false;
    for (const Term& c : shrink_candidates(best)) {
      if (term_size(c) >= term_size(best)) continue;
      if (still_fails(c, property, cfg, fuel)) {
        best = c;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

PropertyReport run_properties(const GenBudget& budget, std::uint64_t seed, const EngineConfig& cfg,
                              std::size_t fuel) {
  constexpr std::size_t kShrinkLimit = 5;
  PropertyReport report;
  TermGenerator gen(seed, budget);
  const std::size_t max_attempts = budget.count * 20 + 100;
  for (std::size_t attempt = 0; attempt < max_attempts && report.checked < budget.count; ++attempt) {
    const Term t = gen.generate(gen.goal_type());
    std::optional<Violation> v;
    bool qubit = false;
    try {
      v = check_term(t, cfg, fuel, &report.steps, &qubit);
    } catch (const TypeError&) {
      ++report.discarded;
      ++report.discard_reasons["ill-typed"];
      continue;
    } catch (const RewriteError& e) {
      ++report.discarded;
      ++report.discard_reasons[e.what()];
      continue;
    } catch (const SemanticsError& e) {
      ++report.discarded;
      ++report.discard_reasons[e.what()];
      continue;
    }
    ++report.checked;
    if (qubit) ++report.qubit_typed;
    if (v) {
      ++report.violations[v->first];
      if (report.counterexamples.size() < kShrinkLimit) {
        report.counterexamples.push_back({v->first, v->second, t, shrink(t, v->first, cfg, fuel)});
      }
    }
  }
  return report;
}

}  // namespace qlam
