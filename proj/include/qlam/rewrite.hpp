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


#ifndef QLAM_REWRITE_HPP
#define QLAM_REWRITE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlam/syntax.hpp"

namespace qlam {

/// Deliberately broken rules, used only to check that the property harness
/// notices a wrong engine.
enum class Mutation {
  kNone,
  kSwapIte,       // if |1> then u else v reduces to v
  kDropNegation,  // scalars lose their sign when pushed out of an application
};

struct EngineConfig {
  double eps = kDefaultEpsilon;
  Mutation mutation = Mutation::kNone;
};

class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  double p;
  Term term;
};

using Distribution = std::vector<Outcome>;

/// Normal form of the linear-combination layer: flattened, merged and
/// zero-pruned sums sorted by printed body, with tensor spines nested to the
/// right. Bodies of abstractions are left untouched.
Term canonicalize(const Term& t, const EngineConfig& cfg = {});

/// Name of the rule that applies at the root of `t`, or "none".
std::string classify_redex(const Term& t, const EngineConfig& cfg = {});

struct StepResult {
  std::string rule;
  Distribution outcomes;
};

/// One leftmost-outermost step. A term that is not in canonical form first
/// takes a "canon" step. Returns nullopt on normal forms and throws
/// RewriteError on stuck terms.
std::optional<StepResult> step(const Term& t, const EngineConfig& cfg = {});

/// Measures the first j qubits of a value whose type is an m-qubit register.
/// Outcomes come in ascending order of the measured bits.
Distribution measure(int j, const Term& value, const EngineConfig& cfg = {});

struct TraceStep {
  std::string rule;
  double p;
  Term before;
  Term after;
};

struct Trace {
  std::vector<TraceStep> steps;

  /// One line per step: `[rule p=<prob>] before ⟶ after`.
  std::string render() const;
};

struct RunResult {
  Distribution distribution;  // merged normal forms
  Distribution leaves;        // one entry per branch before merging
  std::size_t max_depth = 0;
};

/// Expands every probabilistic branch until all reach normal form. Throws
/// RewriteError when a branch takes more than `fuel` steps.
RunResult run_distribution(const Term& t, std::size_t fuel, const EngineConfig& cfg = {});

struct SampleResult {
  Term result;
  Trace trace;
};

/// Follows a single branch, choosing among outcomes with a PRNG seeded by
/// `seed`.
SampleResult sample(const Term& t, std::uint64_t seed, std::size_t fuel,
                    const EngineConfig& cfg = {});

/// True when `t` is a value or a function awaiting arguments. Linear
/// combinations of abstractions and partial `ite` applications count too.
bool is_normal_form(const Term& t);

}  // namespace qlam

#endif  // QLAM_REWRITE_HPP
