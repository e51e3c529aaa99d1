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

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "qlam/surface.hpp"

namespace qlam {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kKet0,
  kKet1,
  kLambda,    // backslash
  kColon,
  kDot,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kEquals,
  kArrow,     // =>
  kSemicolon,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int tl = line, tc = col;
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(src.substr(i, n)), tl, tc});
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (i + n < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_' ||
              src[i + n] == '\'')) {
        ++n;
      }
      push(Tok::kIdent, n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      if (i + n + 1 < src.size() && src[i + n] == '.' &&
          std::isdigit(static_cast<unsigned char>(src[i + n + 1]))) {
        ++n;
        while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      }
      if (i + n < src.size() && (src[i + n] == 'e' || src[i + n] == 'E')) {
        std::size_t m = n + 1;
        if (i + m < src.size() && (src[i + m] == '-' || src[i + m] == '+')) ++m;
        if (i + m < src.size() && std::isdigit(static_cast<unsigned char>(src[i + m]))) {
          while (i + m < src.size() && std::isdigit(static_cast<unsigned char>(src[i + m]))) ++m;
          n = m;
        }
      }
      push(Tok::kNumber, n);
      continue;
    }
    if (c == '|') {
      if (src.substr(i, 3) == "|0>") {
        push(Tok::kKet0, 3);
        continue;
      }
      if (src.substr(i, 3) == "|1>") {
        push(Tok::kKet1, 3);
        continue;
      }
      throw ParseError("expected |0> or |1>", tl, tc);
    }
    if (src.substr(i, 2) == "=>") {
      push(Tok::kArrow, 2);
      continue;
    }
    // Optional unicode alias for the abstraction symbol.
    if (src.substr(i, 2) == "\xCE\xBB") {
      out.push_back({Tok::kLambda, "\\", tl, tc});
      advance(2);
      continue;
    }
    switch (c) {
      case '\\': push(Tok::kLambda, 1); continue;
      case ':': push(Tok::kColon, 1); continue;
      case '.': push(Tok::kDot, 1); continue;
      case '(': push(Tok::kLParen, 1); continue;
      case ')': push(Tok::kRParen, 1); continue;
      case '[': push(Tok::kLBracket, 1); continue;
      case ']': push(Tok::kRBracket, 1); continue;
      case '{': push(Tok::kLBrace, 1); continue;
      case '}': push(Tok::kRBrace, 1); continue;
      case '+': push(Tok::kPlus, 1); continue;
      case '-': push(Tok::kMinus, 1); continue;
      case '*': push(Tok::kStar, 1); continue;
      case '/': push(Tok::kSlash, 1); continue;
      case '=': push(Tok::kEquals, 1); continue;
      case ';': push(Tok::kSemicolon, 1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  static const char* const kKeywords[] = {"let", "if", "then", "else", "ite", "null", "pi",
                                          "head", "tail", "cast", "sqrt", "i"};
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, bool allow_free)
      : toks_(std::move(toks)), allow_free_(allow_free) {}

  SourceFile file() {
    std::vector<std::pair<std::string, Term>> defs;
    while (is_ident("let")) {
      const Token& let = next();
      const Token& name = expect(Tok::kIdent, "macro name");
      if (is_keyword(name.text)) fail("keyword '" + name.text + "' cannot name a macro", name);
      if (macros_.count(name.text)) {
        fail("duplicate macro '" + name.text + "'", name);
      }
      expect(Tok::kEquals, "'='");
      Term body = term();
      expect(Tok::kSemicolon, "';' after definition");
      macros_.emplace(name.text, body);
      defs.emplace_back(name.text, body);
      (void)let;
    }
    if (peek().kind == Tok::kEnd) fail("missing main term", peek());
    Term main = term();
    if (peek().kind == Tok::kSemicolon) next();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "' after main term", peek());
    return SourceFile{std::move(defs), std::move(main), std::nullopt};
  }

  Term whole_term() {
    Term t = term();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'", peek());
    return t;
  }

  Type whole_type() {
    Type t = type();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "' after type", peek());
    return t;
  }

 private:
  // ----- token helpers -----
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_ident(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::kIdent && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      const std::string got = peek().kind == Tok::kEnd ? "end of input" : "'" + peek().text + "'";
      fail(std::string("expected ") + what + ", got " + got, peek());
    }
    return next();
  }
  void expect_ident(const char* kw) {
    if (!is_ident(kw)) fail(std::string("expected '") + kw + "'", peek());
    next();
  }

  // ----- types -----
  Type type() {
    const Token& start = peek();
    Type lhs = tensor_type();
    if (peek().kind == Tok::kArrow) {
      next();
      if (!is_qubit_type(lhs)) fail("arrow domain must be a qubit type", start);
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  Type tensor_type() {
    Type lhs = atom_type();
    if (peek().kind == Tok::kStar) {
      next();
      return Type::tensor(lhs, tensor_type());
    }
    return lhs;
  }

  Type atom_type() {
    if (is_ident("B")) {
      next();
      return Type::base();
    }
    if (is_ident("S")) {
      next();
      expect(Tok::kLParen, "'(' after S");
      Type inner = type();
      expect(Tok::kRParen, "')'");
      return Type::sup(inner);
    }
    if (peek().kind == Tok::kLParen) {
      next();
      Type t = type();
      expect(Tok::kRParen, "')'");
      return t;
    }
    fail("expected a type", peek());
  }

  // ----- scalars -----
  // Scalar expressions are tried speculatively in front of '.'.
  std::optional<Scalar> try_scalar_prefix() {
    const std::size_t save = pos_;
    try {
      Scalar s = scalar_sum();
      if (peek().kind == Tok::kDot) {
        next();
        return s;
      }
    } catch (const ParseError&) {
    } catch (const std::domain_error&) {
    }
    pos_ = save;
    return std::nullopt;
  }

  Scalar scalar_sum() {
    Scalar acc = scalar_product();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const bool minus = next().kind == Tok::kMinus;
      Scalar rhs = scalar_product();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Scalar scalar_product() {
    Scalar acc = scalar_factor();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      const Token& op = next();
      Scalar rhs = scalar_factor();
      if (op.kind == Tok::kSlash) {
        if (rhs.re() == 0.0 && rhs.im() == 0.0) fail("division by zero in scalar", op);
        acc = acc / rhs;
      } else {
        acc = acc * rhs;
      }
    }
    return acc;
  }

  Scalar scalar_factor() {
    const Token& t = peek();
    if (t.kind == Tok::kMinus) {
      next();
      return -scalar_factor();
    }
    if (t.kind == Tok::kNumber) {
      next();
      double v = 0.0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (res.ec != std::errc()) fail("malformed number '" + t.text + "'", t);
      return Scalar(v);
    }
    if (is_ident("i")) {
      next();
      return Scalar(0.0, 1.0);
    }
    if (is_ident("sqrt")) {
      next();
      expect(Tok::kLParen, "'(' after sqrt");
      Scalar arg = scalar_sum();
      expect(Tok::kRParen, "')'");
      if (arg.im() != 0.0 || arg.re() < 0.0) fail("sqrt of a negative or complex value", t);
      return Scalar(std::sqrt(arg.re()));
    }
    if (t.kind == Tok::kLParen) {
      next();
      Scalar s = scalar_sum();
      expect(Tok::kRParen, "')'");
      return s;
    }
    fail("expected a scalar", t);
  }

  // ----- terms -----
  Term term() {
    if (peek().kind == Tok::kLambda) return lambda();
    if (is_ident("if")) return if_expr();
    Term acc = scale_level();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const bool minus = next().kind == Tok::kMinus;
      Term rhs = scale_level();
      acc = Term::sum(acc, minus ? Term::scale(Scalar(-1.0), rhs) : rhs);
    }
    return acc;
  }

  Term lambda() {
    next();
    const Token& name = expect(Tok::kIdent, "variable after '\\'");
    if (is_keyword(name.text)) fail("keyword '" + name.text + "' cannot be bound", name);
    expect(Tok::kColon, "':' after bound variable");
    const Token& ty_start = peek();
    Type ann = type();
    if (!is_qubit_type(ann)) fail("abstraction annotation must be a qubit type", ty_start);
    expect(Tok::kDot, "'.' after annotation");
    bound_.push_back(name.text);
    Term body = term();
    bound_.pop_back();
    return Term::lam(name.text, ann, body);
  }

  Term if_expr() {
    next();
    Term c = term();
    expect_ident("then");
    Term u = term();
    expect_ident("else");
    Term v = term();
    return Term::if_then_else(c, u, v);
  }

  Term scale_level() {
    if (peek().kind == Tok::kLambda) return lambda();
    if (is_ident("if")) return if_expr();
    if (auto s = try_scalar_prefix()) return Term::scale(*s, scale_level());
    if (peek().kind == Tok::kMinus) {
      next();
      return Term::scale(Scalar(-1.0), scale_level());
    }
    return tensor_level();
  }

  Term tensor_level() {
    Term lhs = app_level();
    if (peek().kind == Tok::kStar) {
      next();
      return Term::tensor(lhs, tensor_level());
    }
    return lhs;
  }

  Term app_level() {
    if (is_ident("head")) {
      next();
      return Term::head(app_level());
    }
    if (is_ident("tail")) {
      next();
      return Term::tail(app_level());
    }
    if (is_ident("pi")) {
      next();
      int j = 1;
      if (peek().kind == Tok::kLBracket) {
        next();
        const Token& n = expect(Tok::kNumber, "projection index");
        auto res = std::from_chars(n.text.data(), n.text.data() + n.text.size(), j);
        if (res.ec != std::errc() || res.ptr != n.text.data() + n.text.size() || j < 1) {
          fail("projection index must be a positive integer", n);
        }
        expect(Tok::kRBracket, "']'");
      }
      return Term::proj(j, app_level());
    }
    if (is_ident("cast")) {
      next();
      expect(Tok::kLBrace, "'{' after cast");
      Type src = type();
      expect(Tok::kRBrace, "'}'");
      expect(Tok::kLBrace, "'{' for cast target");
      Type dst = type();
      expect(Tok::kRBrace, "'}'");
      return Term::cast(src, dst, app_level());
    }
    Term acc = atom();
    while (starts_atom()) acc = Term::app(acc, atom());
    return acc;
  }

  bool starts_atom() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kKet0:
      case Tok::kKet1:
      case Tok::kLParen:
        return true;
      case Tok::kIdent:
        return !is_keyword(t.text) || t.text == "ite" || t.text == "null";
      default:
        return false;
    }
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kKet0:
        next();
        return Term::ket0();
      case Tok::kKet1:
        next();
        return Term::ket1();
      case Tok::kLParen: {
        next();
        Term inner = term();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kIdent:
        break;
      default:
        fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'", t);
    }
    if (t.text == "ite") {
      next();
      return Term::ite();
    }
    if (t.text == "null") {
      next();
      expect(Tok::kLBracket, "'[' after null");
      Type a = type();
      expect(Tok::kRBracket, "']'");
      return Term::null(a);
    }
    if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'", t);
    next();
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (*it == t.text) return Term::var(t.text);
    }
    if (auto m = macros_.find(t.text); m != macros_.end()) return m->second;
    if (allow_free_) return Term::var(t.text);
    fail("unknown macro '" + t.text + "'", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool allow_free_;
  std::vector<std::string> bound_;
  std::map<std::string, Term> macros_;
};

std::optional<std::string_view> expect_directive(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  text.remove_prefix(i);
  constexpr std::string_view kPrefix = "--";
  if (text.substr(0, 2) != kPrefix) return std::nullopt;
  text.remove_prefix(2);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  constexpr std::string_view kExpect = "expect:";
  if (text.substr(0, kExpect.size()) != kExpect) return std::nullopt;
  text.remove_prefix(kExpect.size());
  const std::size_t eol = text.find('\n');
  return text.substr(0, eol);
}

}  // namespace

SourceFile parse(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  Parser p(lex(text), /*allow_free=*/false);
  SourceFile file = p.file();
  if (auto d = expect_directive(text)) {
    try {
      file.expect = Parser(lex(*d), false).whole_type();
    } catch (const ParseError& e) {
      throw ParseError("in expect directive: " + e.detail(), 1, e.column());
    }
  }
  return file;
}

Term parse_term(std::string_view text) { return Parser(lex(text), true).whole_term(); }

Type parse_type(std::string_view text) { return Parser(lex(text), true).whole_type(); }

}  // namespace qlam
