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


#ifndef QLAM_PROPERTIES_HPP
#define QLAM_PROPERTIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qlam/rewrite.hpp"
#include "qlam/syntax.hpp"

namespace qlam {

struct GenBudget {
  int max_depth = 4;
  int max_qubits = 3;
  std::size_t count = 500;
};

/// Type-directed generator of closed well-typed terms.
class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, GenBudget budget);

  /// A random qubit type of at most budget.max_qubits qubits.
  Type goal_type();

  /// A closed term whose type is below `goal`.
  Term generate(const Type& goal);

 private:
  struct Var {
    std::string name;
    Type type;
  };
  using Env = std::vector<Var>;

  Term gen(const Type& goal, int depth, const Env& env);
  Term gen_base(const Type& goal, int depth, const Env& env);
  Term gen_sup(const Type& goal, int depth, const Env& env);
  Term gen_mixed(const Type& goal, int depth, const Env& env);
  Term superposition(int width, bool allow_zero_terms);
  Term lambda_app(const Type& goal, int depth, const Env& env);
  Term linear_app(const Type& goal, int depth, const Env& env);
  Term measured(const Type& goal, int depth, const Env& env);
  Scalar scalar();
  std::string fresh();
  int pick(int n);
  bool coin(double p = 0.5);

  std::mt19937_64 rng_;
  GenBudget budget_;
  int counter_ = 0;
};

struct Counterexample {
  std::string property;
  std::string detail;
  Term original;
  Term shrunk;
};

struct PropertyReport {
  std::size_t checked = 0;      // terms whose reduction tree was fully checked
  std::size_t discarded = 0;    // generated terms that could not be run
  std::map<std::string, std::size_t> discard_reasons;
  std::size_t steps = 0;        // reduction steps examined
  std::size_t qubit_typed = 0;  // terms that also got the denotational checks
  std::map<std::string, std::size_t> violations;
  std::vector<Counterexample> counterexamples;

  std::size_t total_violations() const;
};

/// Property names used in reports.
inline constexpr const char* kSubjectReduction = "subject_reduction";
inline constexpr const char* kProbability = "probability_conservation";
inline constexpr const char* kSoundness = "denotational_soundness";
inline constexpr const char* kCommutation = "reduction_commutation";

/// First violated property of `t` along every branch, if any, with a detail
/// message. Returns nullopt when all checks pass; throws when `t` cannot be
/// typed or run.
std::optional<std::pair<std::string, std::string>> check_term(const Term& t,
                                                              const EngineConfig& cfg,
                                                              std::size_t fuel,
                                                              std::size_t* steps = nullptr,
                                                              bool* qubit_typed = nullptr);

/// Smallest term found by greedy local shrinking that still violates
/// `property`.
Term shrink(const Term& t, const std::string& property, const EngineConfig& cfg,
            std::size_t fuel);

/// Generates budget.count checkable terms and checks each one.
PropertyReport run_properties(const GenBudget& budget, std::uint64_t seed,
                              const EngineConfig& cfg, std::size_t fuel);

}  // namespace qlam

#endif  // QLAM_PROPERTIES_HPP
