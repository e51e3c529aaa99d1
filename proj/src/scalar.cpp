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

#include "qlam/scalar.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qlam {

Scalar::Scalar(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw std::domain_error("scalar component is not finite");
  }
  // Normalize negative zero so printing and hashing stay stable.
  if (re_ == 0.0) re_ = 0.0;
  if (im_ == 0.0) im_ = 0.0;
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.re_ == 0.0 && o.im_ == 0.0) {
    throw std::domain_error("division of a scalar by zero");
  }
  return Scalar(value() / o.value());
}

double modulus_sq(const Scalar& a) { return a.re() * a.re() + a.im() * a.im(); }

bool approx_eq(const Scalar& a, const Scalar& b, double eps) {
  return std::abs(a.re() - b.re()) <= eps && std::abs(a.im() - b.im()) <= eps;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace qlam
