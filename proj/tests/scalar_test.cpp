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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qlam/scalar.hpp"

namespace qlam {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(ModulusSq, KnownValues) {
  EXPECT_NEAR(modulus_sq(Scalar(kInvSqrt2)), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(modulus_sq(Scalar(2.0)), 4.0);
  EXPECT_DOUBLE_EQ(modulus_sq(Scalar(0.0, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(modulus_sq(Scalar(3.0, 4.0)), 25.0);
}

TEST(ApproxEq, Tolerance) {
  EXPECT_TRUE(approx_eq(Scalar(1.0), Scalar(1.0), 1e-10));
  EXPECT_TRUE(approx_eq(Scalar(kInvSqrt2) * Scalar(kInvSqrt2), Scalar(0.5), 1e-10));
  EXPECT_FALSE(approx_eq(Scalar(0.0), Scalar(1e-3), 1e-10));
  EXPECT_FALSE(approx_eq(Scalar(0.0, 1.0), Scalar(0.0, -1.0)));
  EXPECT_TRUE(approx_zero(Scalar(1e-12)));
  EXPECT_TRUE(approx_one(Scalar(1.0 + 1e-12)));
}

TEST(ScalarArithmetic, FieldOperations) {
  const Scalar i(0.0, 1.0);
  EXPECT_TRUE(approx_eq(i * i, Scalar(-1.0)));
  EXPECT_TRUE(approx_eq(Scalar(1.0) / i, -i));
  EXPECT_TRUE(approx_eq(Scalar(2.0) + Scalar(0.5, 1.0), Scalar(2.5, 1.0)));
  EXPECT_TRUE(approx_eq(-Scalar(1.0, 2.0), Scalar(-1.0, -2.0)));
}

TEST(ScalarArithmetic, RejectsNonFinite) {
  EXPECT_THROW(Scalar(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_THROW(Scalar(0.0, std::numeric_limits<double>::infinity()), std::domain_error);
  EXPECT_THROW(Scalar(1.0) / Scalar(0.0), std::domain_error);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(kInvSqrt2)), kInvSqrt2);
}

}  // namespace
}  // namespace qlam
