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


#ifndef QLAM_SEMANTICS_HPP
#define QLAM_SEMANTICS_HPP

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlam/rewrite.hpp"
#include "qlam/syntax.hpp"

namespace qlam {

using Amplitude = std::complex<double>;

/// A vector over `width` qubits, amplitudes indexed by basis bitstrings with
/// the first qubit as the most significant bit.
struct DenVector {
  int width = 0;
  std::vector<Amplitude> amps;

  static DenVector basis(int width, std::size_t index);
  static DenVector zero(int width);
};

using DenSet = std::vector<DenVector>;

/// Denotations of free variables, one set per name.
using Valuation = std::map<std::string, DenSet>;

class SemanticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The set of vectors a qubit-typed term denotes. Abstractions are only
/// supported in applied position. Throws SemanticsError otherwise.
DenSet denote(const Term& t, const Valuation& phi = {}, double eps = kDefaultEpsilon);

/// v ∈ ⟦a⟧ for a qubit type `a`. Throws SemanticsError on arrow types.
bool denote_type_membership(const Type& a, const DenVector& v, double eps = kDefaultEpsilon);

/// Equality of sets, each vector matched within `eps` on every amplitude.
bool denset_equal(const DenSet& a, const DenSet& b, double eps = kDefaultEpsilon);

/// Every vector of ⟦t⟧ lies in ⟦A⟧ where A is the inferred type of `t`.
bool check_soundness(const Term& t, double eps = kDefaultEpsilon);

/// ⟦t⟧ equals the union of ⟦r⟧ over the outcomes of one step of `t`.
/// Normal forms trivially pass.
bool check_reduction_commutes(const Term& t, const EngineConfig& cfg = {});

}  // namespace qlam

#endif  // QLAM_SEMANTICS_HPP
