// Copyright 2026 The pdspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdspace/ext_real.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "pdspace/errors.h"
#include "test_util.h"

namespace pdspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(ExtRealTest, RejectsNegativeAndNaN) {
  EXPECT_THROW(ExtReal(-1.0), InvalidArgument);
  EXPECT_THROW(ExtReal(std::nan("")), InvalidArgument);
  EXPECT_NO_THROW(ExtReal(kInf));
}

TEST(ExtRealTest, InfinityAbsorbsAndDominates) {
  const ExtReal inf = ExtReal::infinity();
  EXPECT_TRUE((inf + ExtReal(3.0)).is_infinite());
  EXPECT_TRUE(ExtReal(1e308) < inf);
  EXPECT_EQ(max(ExtReal(2.0), inf), inf);
  EXPECT_EQ(min(ExtReal(2.0), inf), ExtReal(2.0));
  EXPECT_EQ(inf.to_string(), "inf");
}

TEST(PNormTest, ParsesAndValidates) {
  EXPECT_EQ(PNorm::parse("inf"), PNorm::infinity());
  EXPECT_EQ(PNorm::parse("1.5").exponent(), 1.5);
  EXPECT_THROW(PNorm::finite(0.5), InvalidArgument);
  EXPECT_THROW(PNorm::parse("abc"), InvalidArgument);
  EXPECT_TRUE(PNorm::finite(3.0) < PNorm::infinity());
}

TEST(PNormTest, SmallVectors) {
  const std::vector<ExtReal> v{ExtReal(3.0), ExtReal(4.0)};
  EXPECT_EQ(pnorm(v, PNorm::finite(1.0)).value(), 7.0);
  EXPECT_EQ(pnorm(v, PNorm::finite(2.0)).value(), 5.0);
  EXPECT_EQ(pnorm(v, PNorm::infinity()).value(), 4.0);
  EXPECT_EQ(pnorm(std::vector<ExtReal>{}, PNorm::finite(2.0)).value(), 0.0);
}

TEST(PNormTest, MultiplicityCountsRepeatedEntries) {
  const std::vector<WeightedValue> w{{ExtReal(1.0), 4}};
  EXPECT_DOUBLE_EQ(pnorm(w, PNorm::finite(2.0)).value(), 2.0);
  EXPECT_EQ(pnorm(w, PNorm::infinity()).value(), 1.0);
  const std::vector<WeightedValue> zero_mult{{ExtReal::infinity(), 0}, {ExtReal(2.0), 1}};
  EXPECT_EQ(pnorm(zero_mult, PNorm::finite(1.0)).value(), 2.0);
}

TEST(PNormTest, InfiniteIffSomeEntryInfinite) {
  const std::vector<ExtReal> v{ExtReal(1.0), ExtReal::infinity()};
  for (const PNorm p : testing::sweep_ps()) EXPECT_TRUE(pnorm(v, p).is_infinite());
}

TEST(PNormTest, LargeValuesDoNotOverflow) {
  const std::vector<ExtReal> v{ExtReal(1e300), ExtReal(1e300)};
  EXPECT_TRUE(pnorm(v, PNorm::finite(3.0)).is_finite());
  EXPECT_NEAR(pnorm(v, PNorm::finite(3.0)).value() / 1e300, std::cbrt(2.0), 1e-12);
}

TEST(PNormTest, DecreasingInExponent) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ExtReal> v;
    const int n = testing::uniform_int(rng, 0, 6);
    for (int i = 0; i < n; ++i) v.emplace_back(testing::uniform(rng, 0.0, 10.0));
    const auto& ps = testing::sweep_ps();
    for (std::size_t i = 1; i < ps.size(); ++i) {
      EXPECT_LE(pnorm(v, ps[i]).value(), pnorm(v, ps[i - 1]).value() * (1 + 1e-12));
    }
  }
}

}  // namespace
}  // namespace pdspace
