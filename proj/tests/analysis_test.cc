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

#include "pdspace/analysis.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "pdspace/errors.h"
#include "pdspace/matching.h"
#include "test_util.h"

namespace pdspace {
namespace {

using testing::Rng;

const double kPi = std::numbers::pi;

TEST(DiagnoseTest, EmptyDiagram) {
  const SpaceHandle s = make_space("halfplane:l2");
  const std::vector<Diagram> family{Diagram(s)};
  const std::vector<double> eps{1.0, 0.1};
  const DiagnosticsReport r = diagnose_set(family, PNorm::finite(2.0), eps);
  ASSERT_EQ(r.scales.size(), 2u);
  for (const auto& scale : r.scales) {
    EXPECT_EQ(scale.upper_count, 0u);
    EXPECT_TRUE(scale.net_centers.empty());
    ASSERT_TRUE(scale.delta);
    EXPECT_EQ(*scale.delta, scale.eps);
  }
  EXPECT_TRUE(r.uniformly_upper_finite && r.upper_totally_bounded && r.uniformly_lower_vanishing);
  EXPECT_TRUE(r.space_complete);
}

TEST(DiagnoseTest, MultiplicityGrowth) {
  const SpaceHandle s = make_space("halfplane:linf");
  const Point x{0, 2};
  std::vector<Diagram> family;
  for (std::uint64_t k = 1; k <= 6; ++k) family.push_back(Diagram(s, {{x, k}}));
  const std::vector<double> eps{1.0, 0.5, 0.01};
  const DiagnosticsReport r = diagnose_set(family, PNorm::finite(1.0), eps);
  for (const auto& scale : r.scales) {
    EXPECT_EQ(scale.upper_count, 6u);
    ASSERT_EQ(scale.net_centers.size(), 1u);
    EXPECT_EQ(scale.net_centers[0], x);
    EXPECT_TRUE(scale.delta);
  }
}

TEST(DiagnoseTest, CirclesTruncations) {
  const PNorm p = PNorm::finite(1.0);
  const std::vector<double> eps{1.0, 0.5, 0.25};
  std::vector<Diagram> heads;
  for (int n = 1; n <= 12; ++n) heads.push_back(circles_diagram(n).head);
  const DiagnosticsReport r = diagnose_set(heads, p, eps);
  EXPECT_TRUE(r.uniformly_lower_vanishing);
  for (const auto& scale : r.scales) {
    ASSERT_TRUE(scale.delta);
    const Diagram& last = heads.back();
    EXPECT_LT(persistence_norm(lower_part(last, *scale.delta), p).value(), scale.eps);
  }

  std::vector<TruncatedDiagram> tailed;
  for (int n = 20; n <= 30; ++n) tailed.push_back(circles_diagram(n));
  const std::vector<double> coarse{0.5};
  EXPECT_TRUE(diagnose_set(tailed, p, coarse).uniformly_lower_vanishing);
  // pi / 20 exceeds 0.1, so the tails alone block a witness.
  const std::vector<double> fine{0.5, 0.1};
  const DiagnosticsReport blocked = diagnose_set(tailed, p, fine);
  EXPECT_FALSE(blocked.uniformly_lower_vanishing);
  EXPECT_FALSE(blocked.scales[1].delta);
  EXPECT_FALSE(blocked.scales[1].upper_count_certified);
}

TEST(DiagnoseTest, RejectsBadSchedules) {
  const SpaceHandle s = make_space("ray");
  const std::vector<Diagram> family{Diagram(s)};
  const PNorm p = PNorm::finite(1.0);
  EXPECT_THROW(diagnose_set(family, p, std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(diagnose_set(family, p, std::vector<double>{0.5, 1.0}), InvalidArgument);
  EXPECT_THROW(diagnose_set(family, p, std::vector<double>{0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(diagnose_set(family, p, std::vector<double>{1.0, -1.0}), InvalidArgument);
  EXPECT_THROW(diagnose_set(family, p, std::vector<double>{1.0}, 0.0), InvalidArgument);
  const std::vector<Diagram> mixed{Diagram(s), Diagram(make_space("halfplane:l1"))};
  EXPECT_THROW(diagnose_set(mixed, p, std::vector<double>{1.0}), InvalidArgument);
}

TEST(DiagnosePropertyTest, NetsCoverTheUpperParts) {
  Rng rng(11);
  const SpaceHandle s = make_space("halfplane:l2");
  const std::vector<double> eps{2.0, 1.0, 0.5};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Diagram> family;
    const int size = testing::uniform_int(rng, 1, 5);
    for (int i = 0; i < size; ++i) family.push_back(testing::random_diagram(s, rng, 6));
    const double factor = testing::uniform(rng, 0.25, 2.0);
    const DiagnosticsReport r = diagnose_set(family, PNorm::finite(2.0), eps, factor);
    EXPECT_TRUE(r.uniformly_upper_finite && r.upper_totally_bounded && r.uniformly_lower_vanishing);
    for (const auto& scale : r.scales) {
      EXPECT_EQ(scale.net_radius, factor * scale.eps);
      EXPECT_LE(scale.net_covering, scale.net_radius);
      std::uint64_t most = 0;
      for (const auto& d : family) {
        const Diagram up = upper_part(d, scale.eps);
        most = std::max<std::uint64_t>(most, up.cardinality());
        for (const auto& e : up.entries()) {
          double nearest = std::numeric_limits<double>::infinity();
          for (const auto& c : scale.net_centers)
            nearest = std::min(nearest, s->dist(e.point, c).value());
          EXPECT_LE(nearest, scale.net_radius);
        }
      }
      EXPECT_EQ(scale.upper_count, most);
    }
  }
}

TEST(EmbedTest, Examples) {
  const SpaceHandle ray = make_space("ray");
  const SymmetricTuple u = embed_symmetric(Diagram(ray, {Point{3}}), 1);
  const SymmetricTuple v = embed_symmetric(Diagram(ray, {Point{5}}), 1);
  ASSERT_EQ(u.slots.size(), 2u);
  EXPECT_EQ(symmetric_dist(u, v, PNorm::finite(1.0)).value(), 2.0);

  const SpaceHandle eu = make_space("pointed_euclidean:2");
  const SymmetricTuple zero = embed_symmetric(Diagram(eu), 2);
  ASSERT_EQ(zero.slots.size(), 4u);
  for (const auto& slot : zero.slots) EXPECT_EQ(slot, *eu->base_point());
  EXPECT_EQ(symmetric_dist(zero, zero, PNorm::finite(2.0)).value(), 0.0);

  EXPECT_THROW(embed_symmetric(Diagram(ray, {Point{1}, Point{2}}), 1), InvalidArgument);
  EXPECT_THROW(embed_symmetric(Diagram(make_space("halfplane:l2")), 1), CapabilityError);
  EXPECT_THROW(symmetric_dist(u, zero, PNorm::finite(1.0)), InvalidArgument);
}

TEST(EmbedPropertyTest, Isometry) {
  Rng rng(12);
  for (const char* spec : {"ray", "pointed_euclidean:2", "wedge_circles"}) {
    const SpaceHandle s = make_space(spec);
    for (int trial = 0; trial < 150; ++trial) {
      const Diagram a = testing::random_diagram(s, rng, 3);
      const Diagram b = testing::random_diagram(s, rng, 3);
      const PNorm p = testing::random_p(rng);
      const double sym = symmetric_dist(embed_symmetric(a, 3), embed_symmetric(b, 3), p).value();
      EXPECT_TRUE(testing::close_rel(sym, wasserstein(a, b, p).value.value(), 1e-9)) << spec;
    }
  }
}

TEST(WitnessTest, BottleneckStepsAreExact) {
  const SpaceHandle s = make_space("halfplane:linf");
  const auto betas = local_noncompactness_witnesses(Diagram(s), 0.5, PNorm::infinity(), 6);
  ASSERT_EQ(betas.size(), 6u);
  for (std::size_t n = 0; n < betas.size(); ++n) {
    EXPECT_EQ(betas[n], Diagram(s, {{Point{0, 0.6}, n + 1}}));
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(wasserstein(betas[n], betas[k], PNorm::infinity()).value.value(), 0.3);
    }
  }
}

TEST(WitnessTest, FiniteExponents) {
  const SpaceHandle s = make_space("halfplane:linf");
  const Diagram alpha(s, {Point{0, 4}});
  for (double q : {1.0, 2.0, 3.0}) {
    const PNorm p = PNorm::finite(q);
    const double eps = 0.5;
    // n = 10 at p = 1 lands exactly on a power of two.
    const auto betas = local_noncompactness_witnesses(alpha, eps, p, 12);
    ASSERT_EQ(betas.size(), 12u);
    for (std::size_t n = 0; n < betas.size(); ++n) {
      EXPECT_LT(wasserstein(betas[n], alpha, p).value.value(), eps);
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_GE(wasserstein(betas[n], betas[k], p).value.value(), eps / 4 - 1e-12);
      }
    }
  }
  EXPECT_THROW(local_noncompactness_witnesses(alpha, 2.0, PNorm::finite(1.0), 3), InvalidArgument);
  EXPECT_THROW(local_noncompactness_witnesses(alpha, 0.0, PNorm::finite(1.0), 3), InvalidArgument);
}

TEST(CirclesTest, PartialSums) {
  const SeriesBracket one = circles_partial(1);
  EXPECT_EQ(one.partial, kPi);
  EXPECT_EQ(one.tail_bound, kPi);
  const double limit = kPi * kPi * kPi / 6.0;
  const SeriesBracket hundred = circles_partial(100);
  EXPECT_LE(hundred.partial, limit);
  EXPECT_GE(hundred.partial + hundred.tail_bound, limit);
  EXPECT_THROW(circles_partial(5, PNorm::finite(2.0)), InvalidArgument);
  EXPECT_THROW(circles_partial(0), InvalidArgument);

  const TruncatedDiagram d = circles_diagram(3);
  EXPECT_EQ(d.head.cardinality(), 3u);
  EXPECT_NEAR(persistence_norm(d.head, PNorm::finite(1.0)).value(), circles_partial(3).partial,
              1e-12);
  EXPECT_EQ(d.tail_bound.value(), kPi / 3);
}

TEST(NonLengthSpaceTest, ValuesForSeveralSizes) {
  for (int n = 1; n <= 5; ++n) {
    const auto [a, b] = non_length_space_instance(n);
    for (double q : {1.0, 2.0, 3.0}) {
      EXPECT_NEAR(wasserstein(a, b, PNorm::finite(q)).value.value(), std::pow(n + 1.0, 1.0 / q),
                  1e-12);
    }
  }
}

}  // namespace
}  // namespace pdspace
