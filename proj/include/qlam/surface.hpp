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

#ifndef QLAM_SURFACE_HPP
#define QLAM_SURFACE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlam/syntax.hpp"

namespace qlam {

/// Lexical or syntax error, carrying a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// A parsed `.qlam` file. Macro references inside `main` and inside later
/// definitions are already expanded.
struct SourceFile {
  std::vector<std::pair<std::string, Term>> defs;
  Term main;
  std::optional<Type> expect;
};

/// Parses a whole file: `let name = term ;` definitions followed by a main
/// term, with an optional `-- expect: <type>` first line. Identifiers that
/// are neither λ-bound nor defined earlier are rejected.
SourceFile parse(std::string_view text);

/// Parses a single term; unknown identifiers become free variables.
Term parse_term(std::string_view text);

/// Parses a single type.
Type parse_type(std::string_view text);

/// Renders a term in the concrete syntax accepted by parse_term.
std::string print(const Term& t);

/// Renders a type; `compact` drops the spaces around `*` and `=>`.
std::string print(const Type& t, bool compact = false);

/// Scalar literal rendering: recognizes small rationals and p/(q*sqrt(n))
/// forms, otherwise falls back to shortest round-trip decimals.
std::string print_scalar(const Scalar& s);

}  // namespace qlam

#endif  // QLAM_SURFACE_HPP
