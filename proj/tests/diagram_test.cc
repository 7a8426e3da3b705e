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

#include "pdspace/diagram.h"

#include <vector>

#include <gtest/gtest.h>

#include "pdspace/errors.h"
#include "pdspace/matching.h"
#include "test_util.h"

namespace pdspace {
namespace {

using testing::Rng;

class DiagramTest : public ::testing::Test {
 protected:
  SpaceHandle linf_ = make_space("halfplane:linf");
};

TEST_F(DiagramTest, CanonicalFormMergesAndSorts) {
  const Diagram d(linf_, std::vector<Point>{Point{1, 3}, Point{0, 2}, Point{1, 3}});
  ASSERT_EQ(d.entries().size(), 2u);
  EXPECT_EQ(d.entries()[0].point, (Point{0, 2}));
  EXPECT_EQ(d.entries()[1].mult, 2u);
  EXPECT_EQ(d.cardinality(), 3u);
  EXPECT_EQ(d, Diagram(linf_, {{Point{1, 3}, 2}, {Point{0, 2}, 1}}));
}

TEST_F(DiagramTest, RejectsPointsOfA) {
  EXPECT_THROW(Diagram(linf_, std::vector<Point>{Point{2, 2}}), InvalidArgument);
  EXPECT_THROW(Diagram(linf_, {{Point{0, 2}, 0}}), InvalidArgument);
  EXPECT_THROW(Diagram(linf_, std::vector<Point>{Point{3, 2}}), InvalidArgument);
}

TEST_F(DiagramTest, NegativeZeroIsNormalized) {
  EXPECT_EQ(Diagram(linf_, std::vector<Point>{Point{-0.0, 1}}),
            Diagram(linf_, std::vector<Point>{Point{0.0, 1}}));
}

TEST_F(DiagramTest, Add) {
  const Diagram a(linf_, std::vector<Point>{Point{0, 2}});
  EXPECT_EQ(add(a, a), Diagram(linf_, {{Point{0, 2}, 2}}));
  EXPECT_EQ(add(a, Diagram(linf_)), a);
  EXPECT_EQ(add(a, Diagram(linf_, std::vector<Point>{Point{1, 3}})),
            Diagram(linf_, std::vector<Point>{Point{0, 2}, Point{1, 3}}));
  EXPECT_THROW(add(a, Diagram(make_space("halfplane:l2"))), InvalidArgument);
}

TEST_F(DiagramTest, UpperAndLowerParts) {
  const Diagram a(linf_, std::vector<Point>{Point{0, 2}, Point{0, 8}});
  EXPECT_EQ(upper_part(a, 2.0), Diagram(linf_, std::vector<Point>{Point{0, 8}}));
  EXPECT_EQ(lower_part(a, 2.0), Diagram(linf_, std::vector<Point>{Point{0, 2}}));
  EXPECT_EQ(upper_part(a, 0.5), a);
  EXPECT_TRUE(lower_part(a, 0.5).empty());
  EXPECT_TRUE(upper_part(Diagram(linf_), 1.0).empty());
  EXPECT_THROW(upper_part(a, 0.0), InvalidArgument);
}

TEST_F(DiagramTest, PersistenceNorm) {
  const Diagram a(linf_, std::vector<Point>{Point{0, 2}, Point{0, 4}});
  EXPECT_EQ(persistence_norm(a, PNorm::finite(1.0)).value(), 3.0);
  EXPECT_EQ(persistence_norm(a, PNorm::infinity()).value(), 2.0);
  EXPECT_EQ(persistence_norm(Diagram(linf_), PNorm::finite(2.0)).value(), 0.0);
}

TEST_F(DiagramTest, EssentialFinitenessReport) {
  const TruncatedDiagram t{Diagram(linf_, std::vector<Point>{Point{0, 2}}), ExtReal(0.1),
                           PNorm::finite(1.0)};
  const double eps[] = {1.0};
  const auto rows = check_essentially_p_finite(t, eps);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].upper_count, 1u);
  EXPECT_LE(rows[0].lower_norm_bound.value(), 0.1);
  EXPECT_FALSE(rows[0].tail_may_reach_upper);

  const auto zero = check_essentially_p_finite(TruncatedDiagram::exact(Diagram(linf_)), eps);
  EXPECT_EQ(zero[0].upper_count, 0u);
  EXPECT_EQ(zero[0].lower_norm_bound.value(), 0.0);
}

TEST(DiagramPropertyTest, MonoidLaws) {
  Rng rng(21);
  const SpaceHandle s = make_space("halfplane:l2");
  for (int trial = 0; trial < 500; ++trial) {
    const Diagram a = testing::random_diagram(s, rng, 5);
    const Diagram b = testing::random_diagram(s, rng, 5);
    const Diagram c = testing::random_diagram(s, rng, 5);
    EXPECT_EQ(add(a, b), add(b, a));
    EXPECT_EQ(add(add(a, b), c), add(a, add(b, c)));
    EXPECT_EQ(add(a, Diagram(s)), a);
  }
}

TEST(DiagramPropertyTest, UpperPlusLowerIsWhole) {
  Rng rng(22);
  const SpaceHandle s = make_space("halfplane:linf");
  for (int trial = 0; trial < 500; ++trial) {
    const Diagram a = testing::random_diagram(s, rng, 6);
    const double delta = std::max(0.5, testing::coordinate(rng, 0.1, 3.0));
    EXPECT_EQ(add(upper_part(a, delta), lower_part(a, delta)), a);
  }
}

TEST(DiagramPropertyTest, NormDecreasesInExponentAndMatchesDistanceToZero) {
  Rng rng(23);
  for (const char* spec : {"halfplane:l1", "halfplane:l2", "pointed_euclidean:2"}) {
    const SpaceHandle s = make_space(spec);
    for (int trial = 0; trial < 300; ++trial) {
      const Diagram a = testing::random_diagram(s, rng, 5);
      const auto& ps = testing::sweep_ps();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const double norm = persistence_norm(a, ps[i]).value();
        if (i > 0) EXPECT_LE(norm, persistence_norm(a, ps[i - 1]).value() * (1 + 1e-12));
        const double w = wasserstein(a, Diagram(s), ps[i]).value.value();
        EXPECT_TRUE(testing::close_rel(norm, w, 1e-9)) << norm << " vs " << w;
      }
    }
  }
}

}  // namespace
}  // namespace pdspace
