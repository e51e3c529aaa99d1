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


#ifndef QLAM_TYPECHECK_HPP
#define QLAM_TYPECHECK_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "qlam/syntax.hpp"

namespace qlam {

/// Variable name to qubit type. Arrow types are rejected when the context
/// is consulted.
using TypingContext = std::map<std::string, Type>;

enum class TypeErrorKind {
  kUnboundVariable,
  kLinearReused,
  kLinearDropped,
  kDomainMismatch,
  kNotAFunction,
  kNotQType,
  kBadCastShape,
  kAnnotationMismatch,
};

/// Stable human-readable name, e.g. "linear variable reused".
const char* to_string(TypeErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string location, std::string detail);

  TypeErrorKind kind() const { return kind_; }
  /// Dot-separated child path from the root ("fun.arg.body"); "" is the root.
  const std::string& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  TypeErrorKind kind_;
  std::string location_;
  std::string detail_;
};

/// Synthesizes the least type of `t` under `ctx`. Throws TypeError.
Type infer(const TypingContext& ctx, const Term& t);

/// Like infer, but context variables may be unused or shared. Meant for
/// typing subterms of a term that was already checked as a whole.
Type infer_subterm(const TypingContext& ctx, const Term& t);

inline Type infer(const Term& t) { return infer(TypingContext{}, t); }

/// True iff infer(ctx, t) ⪯ a. Typing errors propagate.
bool check(const TypingContext& ctx, const Term& t, const Type& a);

}  // namespace qlam

#endif  // QLAM_TYPECHECK_HPP
