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

#ifndef QLAM_SCALAR_HPP
#define QLAM_SCALAR_HPP

#include <complex>
#include <string>

namespace qlam {

/// Default tolerance used when deciding scalar side conditions (1.t, 0.t)
/// and when comparing terms or vectors.
inline constexpr double kDefaultEpsilon = 1e-10;

/// Complex amplitude. Both components are always finite; construction from
/// a NaN or infinite component throws std::domain_error.
class Scalar {
 public:
  constexpr Scalar() = default;
  Scalar(double re, double im = 0.0);  // NOLINT: implicit from real
  explicit Scalar(std::complex<double> z) : Scalar(z.real(), z.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> value() const { return {re_, im_}; }

  Scalar operator+(const Scalar& o) const { return Scalar(value() + o.value()); }
  Scalar operator-(const Scalar& o) const { return Scalar(value() - o.value()); }
  Scalar operator*(const Scalar& o) const { return Scalar(value() * o.value()); }
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const { return Scalar(-re_, -im_); }

  /// Exact component-wise equality; use approx_eq for tolerance checks.
  bool operator==(const Scalar& o) const = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

/// |a|^2.
double modulus_sq(const Scalar& a);

/// True iff both components differ by at most eps.
bool approx_eq(const Scalar& a, const Scalar& b, double eps = kDefaultEpsilon);

inline bool approx_zero(const Scalar& a, double eps = kDefaultEpsilon) {
  return approx_eq(a, Scalar(0.0), eps);
}

inline bool approx_one(const Scalar& a, double eps = kDefaultEpsilon) {
  return approx_eq(a, Scalar(1.0), eps);
}

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double x);

}  // namespace qlam

#endif  // QLAM_SCALAR_HPP
