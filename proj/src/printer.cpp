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

#include <cmath>
#include <optional>

#include "qlam/surface.hpp"

namespace qlam {
namespace {

constexpr double kNiceTol = 1e-12;

bool near_int(double x, long long* out) {
  if (std::abs(x) > 1e15) return false;
  const double r = std::round(x);
  if (std::abs(x - r) > kNiceTol) return false;
  *out = static_cast<long long>(r);
  return true;
}

bool squarefree(int n) {
  for (int d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

// Recognizes p, p/q, p*sqrt(n), p/sqrt(n) and p/(q*sqrt(n)) for small
// denominators; anything else falls back to the shortest decimal.
std::string nice_real(double x) {
  long long p = 0;
  if (near_int(x, &p)) return std::to_string(p);
  for (int q = 2; q <= 64; ++q) {
    if (near_int(x * q, &p)) return std::to_string(p) + "/" + std::to_string(q);
  }
  for (int n = 2; n <= 99; ++n) {
    if (!squarefree(n)) continue;
    const double root = std::sqrt(static_cast<double>(n));
    const std::string rs = "sqrt(" + std::to_string(n) + ")";
    if (near_int(x / root, &p) && p != 0) {
      if (p == 1) return rs;
      if (p == -1) return "-" + rs;
      return std::to_string(p) + "*" + rs;
    }
    if (near_int(x * root, &p) && p != 0) return std::to_string(p) + "/" + rs;
    for (int q = 2; q <= 16; ++q) {
      if (near_int(x * root * q, &p) && p != 0) {
        return std::to_string(p) + "/(" + std::to_string(q) + "*" + rs + ")";
      }
    }
  }
  return format_double(x);
}

// Precedence levels, loosest first. A node printed in a context tighter than
// its own level gets parentheses.
enum Prec { kTop = 0, kSumLeft = 1, kScaleP = 2, kTensorP = 3, kAppP = 4, kAtomP = 5 };

bool is_prefix_op(const Term& t) {
  return t.is(Term::Kind::kHead) || t.is(Term::Kind::kTail) || t.is(Term::Kind::kProj) ||
         t.is(Term::Kind::kCast);
}

bool is_if_sugar(const Term& t) {
  return t.is(Term::Kind::kApp) && t.fun().is(Term::Kind::kApp) &&
         t.fun().fun().is(Term::Kind::kApp) && t.fun().fun().fun().is(Term::Kind::kIte);
}

bool is_negation(const Term& t) {
  return t.is(Term::Kind::kScale) && t.coef() == Scalar(-1.0);
}

std::string scalar_prefix(const Scalar& s) {
  const std::string text = print_scalar(s);
  long long p = 0;
  if (s.im() == 0.0 && text.find_first_not_of("0123456789") == std::string::npos &&
      near_int(s.re(), &p)) {
    return text;
  }
  return "(" + text + ")";
}

class TermPrinter {
 public:
  std::string run(const Term& t) {
    emit(t, kTop);
    return std::move(out_);
  }

 private:
  void emit(const Term& t, int ctx) {
    const int own = level(t);
    const bool paren = own < ctx;
    if (paren) out_ += '(';
    body(t);
    if (paren) out_ += ')';
  }

  // Prefix operators take an app-level operand, but `head f x` reads badly
  // so only chains of prefix operators are left unparenthesized.
  void prefix_operand(const Term& t) {
    out_ += ' ';
    emit(t, is_prefix_op(t) ? kAppP : kAtomP);
  }

  static int level(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kLam:
        return kTop;
      case Term::Kind::kApp:
        return is_if_sugar(t) ? kTop : kAppP;
      case Term::Kind::kSum:
        return kSumLeft;
      case Term::Kind::kScale:
        return kScaleP;
      case Term::Kind::kTensor:
        return kTensorP;
      case Term::Kind::kProj:
      case Term::Kind::kHead:
      case Term::Kind::kTail:
      case Term::Kind::kCast:
        return kAppP;
      default:
        return kAtomP;
    }
  }

  void body(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        out_ += t.name();
        return;
      case Term::Kind::kKet0:
        out_ += "|0>";
        return;
      case Term::Kind::kKet1:
        out_ += "|1>";
        return;
      case Term::Kind::kIte:
        out_ += "ite";
        return;
      case Term::Kind::kNull:
        out_ += "null[" + print(t.annotation(), true) + "]";
        return;
      case Term::Kind::kLam:
        out_ += "\\" + t.name() + ":" + print(t.annotation(), true) + ". ";
        emit(t.body(), kTop);
        return;
      case Term::Kind::kApp:
        if (is_if_sugar(t)) {
          out_ += "if ";
          emit(t.fun().fun().arg(), kTop);
          out_ += " then ";
          emit(t.fun().arg(), kTop);
          out_ += " else ";
          emit(t.arg(), kTop);
          return;
        }
        emit(t.fun(), t.fun().is(Term::Kind::kApp) && !is_if_sugar(t.fun()) ? kAppP : kAtomP);
        out_ += ' ';
        emit(t.arg(), kAtomP);
        return;
      case Term::Kind::kSum:
        emit(t.left(), kSumLeft);
        if (is_negation(t.right())) {
          out_ += " - ";
          emit(t.right().body(), kScaleP);
        } else {
          out_ += " + ";
          emit(t.right(), kScaleP);
        }
        return;
      case Term::Kind::kScale:
        out_ += scalar_prefix(t.coef()) + ".";
        emit(t.body(), t.body().is(Term::Kind::kScale) ? kAtomP : kScaleP);
        return;
      case Term::Kind::kTensor:
        emit(t.left(), kAppP);
        out_ += " * ";
        emit(t.right(), kTensorP);
        return;
      case Term::Kind::kProj:
        out_ += "pi[" + std::to_string(t.index()) + "]";
        prefix_operand(t.body());
        return;
      case Term::Kind::kHead:
        out_ += "head";
        prefix_operand(t.body());
        return;
      case Term::Kind::kTail:
        out_ += "tail";
        prefix_operand(t.body());
        return;
      case Term::Kind::kCast:
        out_ += "cast{" + print(t.source(), true) + "}{" + print(t.target(), true) + "}";
        prefix_operand(t.body());
        return;
    }
  }

  std::string out_;
};

void print_type(const Type& t, bool compact, int ctx, std::string& out) {
  // ctx: 0 anywhere, 1 tensor-left, 2 tensor-right, 3 arrow-domain
  const std::string star = compact ? "*" : " * ";
  const std::string arrow = compact ? "=>" : " => ";
  switch (t.kind()) {
    case Type::Kind::kBase:
      out += "B";
      return;
    case Type::Kind::kSup:
      out += "S(";
      print_type(t.inner(), compact, 0, out);
      out += ")";
      return;
    case Type::Kind::kTensor: {
      const bool paren = ctx == 1;
      if (paren) out += "(";
      print_type(t.left(), compact, 1, out);
      out += star;
      print_type(t.right(), compact, 2, out);
      if (paren) out += ")";
      return;
    }
    case Type::Kind::kArrow: {
      const bool paren = ctx != 0;
      if (paren) out += "(";
      print_type(t.domain(), compact, 3, out);
      out += arrow;
      print_type(t.codomain(), compact, 0, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_scalar(const Scalar& s) {
  const double re = s.re();
  const double im = s.im();
  if (std::abs(im) <= kNiceTol) return nice_real(re);
  std::string imag;
  const double mag = std::abs(im);
  if (std::abs(mag - 1.0) <= kNiceTol) {
    imag = "i";
  } else {
    imag = nice_real(mag) + "*i";
  }
  if (std::abs(re) <= kNiceTol) return (im < 0 ? "-" : "") + imag;
  return nice_real(re) + (im < 0 ? "-" : "+") + imag;
}

std::string print(const Term& t) { return TermPrinter().run(t); }

std::string print(const Type& t, bool compact) {
  std::string out;
  print_type(t, compact, 0, out);
  return out;
}

}  // namespace qlam
