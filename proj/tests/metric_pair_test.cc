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

#include "pdspace/metric_pair.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pdspace/errors.h"
#include "test_util.h"

namespace pdspace {
namespace {

using testing::Rng;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

const char* const kSweepSpaces[] = {"halfplane:l1",        "halfplane:l2", "halfplane:linf",
                                    "pointed_euclidean:2", "ray",          "wedge_circles",
                                    "wedge_intervals"};

TEST(MakeSpaceTest, CapabilityFlags) {
  for (const char* spec : {"halfplane:l1", "halfplane:l2", "halfplane:linf", "pointed_euclidean:3",
                           "ray", "wedge_circles"}) {
    const Capabilities c = make_space(spec)->capabilities();
    EXPECT_TRUE(c.distance_minimizing) << spec;
    EXPECT_TRUE(c.geodesic) << spec;
  }
  EXPECT_FALSE(make_space("wedge_intervals")->capabilities().distance_minimizing);
  EXPECT_TRUE(make_space("halfplane:l2")->capabilities().nonneg_curvature);
}

TEST(MakeSpaceTest, RejectsBadSpecs) {
  EXPECT_THROW(make_space("nosuchspace"), InvalidArgument);
  EXPECT_THROW(make_space("halfplane:l3"), InvalidArgument);
  EXPECT_THROW(make_space("pointed_euclidean:0"), InvalidArgument);
  EXPECT_THROW(make_space("pointed_euclidean:-2"), InvalidArgument);
  EXPECT_THROW(make_space("pointed_euclidean:2:1"), InvalidArgument);
  EXPECT_THROW(make_space("ray:5"), InvalidArgument);
}

TEST(MakeSpaceTest, Aliases) {
  EXPECT_EQ(make_space("halfplane:inf")->id(), "halfplane:linf");
  EXPECT_EQ(make_space("halfplane:1")->id(), "halfplane:l1");
  EXPECT_EQ(make_space("pointed_euclidean:2:0,0")->id(), "pointed_euclidean:2");
  EXPECT_EQ(make_space("pointed_euclidean:2:1,0")->id(), "pointed_euclidean:2:1,0");
}

TEST(HalfPlaneTest, Distances) {
  const SpaceHandle linf = make_space("halfplane:linf");
  EXPECT_EQ(linf->dist(Point{0, 6}, Point{0, 2}).value(), 4.0);
  EXPECT_EQ(dist_to_A(*linf, Point{0, 6}).value(), 3.0);
  const Projection pr = project_to_A(*linf, Point{0, 6});
  EXPECT_EQ(pr.point, (Point{3, 3}));
  EXPECT_EQ(pr.distance.value(), 3.0);

  const SpaceHandle l1 = make_space("halfplane:l1");
  EXPECT_EQ(dist_to_A(*l1, Point{0, 1}).value(), 1.0);
  EXPECT_EQ(l1->dist(Point{0, 1}, Point{10, 11}).value(), 20.0);
  const SpaceHandle l2 = make_space("halfplane:l2");
  EXPECT_DOUBLE_EQ(dist_to_A(*l2, Point{0, 2}).value(), std::sqrt(2.0));
}

TEST(HalfPlaneTest, RejectsPointsBelowDiagonal) {
  const SpaceHandle s = make_space("halfplane:l2");
  EXPECT_THROW(s->canonicalize(Point{2, 1}), InvalidArgument);
  EXPECT_THROW(s->canonicalize(Point{1}), InvalidArgument);
  EXPECT_TRUE(s->in_A(Point{1, 1}));
}

TEST(HalfPlaneTest, InfiniteCoordinates) {
  const SpaceHandle linf = make_space("halfplane:linf");
  EXPECT_EQ(linf->dist(Point{0, kInf}, Point{1, kInf}).value(), 1.0);
  EXPECT_TRUE(linf->dist(Point{0, kInf}, Point{0, 5}).is_infinite());
  const SpaceHandle l2 = make_space("halfplane:l2");
  EXPECT_TRUE(l2->dist(Point{0, kInf}, Point{1, kInf}).is_infinite());
  EXPECT_EQ(l2->dist(Point{0, kInf}, Point{0, kInf}).value(), 0.0);
  EXPECT_THROW(project_to_A(*linf, Point{0, kInf}), InvalidArgument);
}

TEST(QuotientDistTest, NonLengthSpacePair) {
  const SpaceHandle l1 = make_space("halfplane:l1");
  const Point x{0, 1};
  const Point y{10, 11};
  EXPECT_EQ(quotient_dist(*l1, PNorm::finite(1.0), x, y).value(), 2.0);
  EXPECT_NEAR(quotient_dist(*l1, PNorm::finite(2.0), x, y).value(), std::sqrt(2.0), 1e-12);
  EXPECT_EQ(quotient_dist(*l1, PNorm::infinity(), x, y).value(), 1.0);
  EXPECT_EQ(quotient_dist(*l1, PNorm::finite(2.0), x, x).value(), 0.0);
  EXPECT_EQ(quotient_dist(*l1, PNorm::finite(2.0), x, std::nullopt).value(), 1.0);
  EXPECT_EQ(quotient_dist(*l1, PNorm::finite(2.0), std::nullopt, std::nullopt).value(), 0.0);
}

TEST(InOffsetTest, StrictInequality) {
  const SpaceHandle linf = make_space("halfplane:linf");
  EXPECT_TRUE(in_offset(*linf, 3.0, Point{0, 4}));
  EXPECT_FALSE(in_offset(*linf, 2.0, Point{0, 4}));
  EXPECT_TRUE(in_offset(*make_space("ray"), 1.0, Point{0.5}));
  EXPECT_THROW(in_offset(*linf, 0.0, Point{0, 4}), InvalidArgument);
}

TEST(RayTest, DistanceToBase) {
  const SpaceHandle ray = make_space("ray");
  EXPECT_EQ(dist_to_A(*ray, Point{2.5}).value(), 2.5);
  const Projection pr = project_to_A(*ray, Point{5});
  EXPECT_EQ(pr.point, Point{0});
  EXPECT_EQ(pr.distance.value(), 5.0);
  EXPECT_THROW(ray->canonicalize(Point{-1}), InvalidArgument);
}

TEST(PointedEuclideanTest, BasePoint) {
  const SpaceHandle s = make_space("pointed_euclidean:2:1,1");
  EXPECT_EQ(*s->base_point(), (Point{1, 1}));
  EXPECT_EQ(dist_to_A(*s, Point{4, 5}).value(), 5.0);
  EXPECT_TRUE(s->in_A(Point{1, 1}));
}

TEST(WedgeCirclesTest, TwoCaseFormula) {
  const SpaceHandle s = make_space("wedge_circles");
  EXPECT_DOUBLE_EQ(s->dist(Point{1, kPi / 2}, Point{1, 3 * kPi / 2}).value(), kPi);
  EXPECT_DOUBLE_EQ(s->dist(Point{2, 1}, Point{3, 1}).value(), 5.0);
  EXPECT_DOUBLE_EQ(s->dist(Point{2, 0.5}, Point{2, 2 * kPi - 0.5}).value(), 2.0);
  // x_n = n e^{i pi / n^3} sits at distance pi / n^2 from the base point.
  for (int n = 1; n <= 5; ++n) {
    const double nn = n;
    EXPECT_NEAR(dist_to_A(*s, Point{nn, kPi / (nn * nn * nn)}).value(), kPi / (nn * nn), 1e-15);
  }
  EXPECT_TRUE(s->in_A(s->canonicalize(Point{3, 2 * kPi})));
  EXPECT_THROW(s->canonicalize(Point{0, 1}), InvalidArgument);
  EXPECT_THROW(s->canonicalize(Point{1.5, 1}), InvalidArgument);
}

TEST(WedgeIntervalsTest, InfimumNotAttained) {
  const SpaceHandle s = make_space("wedge_intervals");
  const Point wedge{1, 0};
  EXPECT_EQ(dist_to_A(*s, wedge).value(), 1.0);
  EXPECT_THROW(project_to_A(*s, wedge), CapabilityError);
  for (int k = 1; k <= 5; ++k) {
    const double kk = k;
    EXPECT_EQ(s->dist(wedge, Point{kk, 1 + 1 / kk}).value(), 1 + 1 / kk);
  }
  EXPECT_EQ(s->dist(Point{1, 0.5}, Point{2, 0.25}).value(), 0.75);
}

TEST(MetricAxiomsTest, RandomTriples) {
  Rng rng(11);
  for (const char* spec : kSweepSpaces) {
    const SpaceHandle s = make_space(spec);
    for (int trial = 0; trial < 2000; ++trial) {
      const Point x = testing::random_point(*s, rng);
      const Point y = testing::random_point(*s, rng);
      const Point z = testing::random_point(*s, rng);
      EXPECT_EQ(s->dist(x, x).value(), 0.0) << spec;
      EXPECT_EQ(s->dist(x, y), s->dist(y, x)) << spec;
      const double xz = s->dist(x, z).value();
      const double via = s->dist(x, y).value() + s->dist(y, z).value();
      EXPECT_LE(xz, via + 1e-9 * std::max(1.0, via)) << spec;
    }
  }
}

TEST(QuotientDistTest, MonotoneInExponent) {
  Rng rng(12);
  for (const char* spec : kSweepSpaces) {
    const SpaceHandle s = make_space(spec);
    for (int trial = 0; trial < 500; ++trial) {
      const Point x = testing::random_point(*s, rng);
      const Point y = testing::random_point(*s, rng);
      const auto& ps = testing::sweep_ps();
      for (std::size_t i = 1; i < ps.size(); ++i) {
        EXPECT_LE(quotient_dist(*s, ps[i], x, y).value(),
                  quotient_dist(*s, ps[i - 1], x, y).value() * (1 + 1e-12));
      }
    }
  }
}

TEST(QuotientDistTest, RequotientingIsIdempotent) {
  Rng rng(13);
  for (const char* spec : kSweepSpaces) {
    const SpaceHandle s = make_space(spec);
    const auto& ps = testing::sweep_ps();
    for (int trial = 0; trial < 300; ++trial) {
      const Point x = testing::random_point(*s, rng);
      const Point y = testing::random_point(*s, rng);
      for (std::size_t qi = 0; qi < ps.size(); ++qi) {
        const SpaceHandle dq = make_quotient_space(s, ps[qi]);
        for (std::size_t pi = qi; pi < ps.size(); ++pi) {
          const double lhs = quotient_dist(*dq, ps[pi], x, y).value();
          const double rhs = quotient_dist(*s, ps[pi], x, y).value();
          EXPECT_TRUE(testing::close_rel(lhs, rhs, 1e-12)) << spec << " " << lhs << " " << rhs;
        }
      }
    }
  }
}

TEST(ProjectionTest, BitExactDistance) {
  Rng rng(14);
  for (const char* spec : kSweepSpaces) {
    const SpaceHandle s = make_space(spec);
    if (!s->capabilities().distance_minimizing) continue;
    for (int trial = 0; trial < 500; ++trial) {
      const Point x = testing::random_point(*s, rng);
      const Projection pr = project_to_A(*s, x);
      EXPECT_TRUE(s->in_A(pr.point)) << spec;
      EXPECT_EQ(pr.distance, s->dist(x, pr.point)) << spec;
      EXPECT_EQ(pr.distance, s->dist_to_A(x)) << spec;
    }
  }
}

TEST(GeodesicPointTest, ConstantSpeed) {
  Rng rng(15);
  for (const char* spec : kSweepSpaces) {
    const SpaceHandle s = make_space(spec);
    for (int trial = 0; trial < 500; ++trial) {
      const Point x = testing::random_point(*s, rng);
      const Point y = testing::random_point(*s, rng);
      EXPECT_EQ(s->geodesic_point(x, y, 0.0), x) << spec;
      EXPECT_EQ(s->geodesic_point(x, y, 1.0), y) << spec;
      const double a = testing::uniform(rng, 0.0, 1.0);
      const double b = testing::uniform(rng, 0.0, 1.0);
      const double d = s->dist(s->geodesic_point(x, y, a), s->geodesic_point(x, y, b)).value();
      const double expected = std::abs(a - b) * s->dist(x, y).value();
      EXPECT_NEAR(d, expected, 1e-9 * std::max(1.0, expected)) << spec;
    }
  }
}

TEST(RegistryTest, UserSpace) {
  // The real line with A = the integers.
  register_space("integers", [](std::string_view) {
    SpaceCallbacks cb;
    cb.id = "integers";
    cb.capabilities.distance_minimizing = true;
    cb.dist = [](const Point& x, const Point& y) { return ExtReal(std::abs(x[0] - y[0])); };
    cb.dist_to_A = [](const Point& x) { return ExtReal(std::abs(x[0] - std::round(x[0]))); };
    cb.in_A = [](const Point& x) { return x[0] == std::round(x[0]); };
    cb.nearest_in_A = [](const Point& x) {
      const double a = std::round(x[0]);
      return std::optional<Projection>({Point{a}, ExtReal(std::abs(x[0] - a))});
    };
    return make_custom_space(std::move(cb));
  });
  const SpaceHandle s = make_space("integers");
  EXPECT_EQ(s->id(), "integers");
  EXPECT_EQ(dist_to_A(*s, Point{2.25}).value(), 0.25);
  EXPECT_EQ(project_to_A(*s, Point{2.75}).point, Point{3});
  EXPECT_THROW(s->geodesic_point(Point{0.5}, Point{0.25}, 0.5), CapabilityError);
  EXPECT_THROW(register_space("ray", nullptr), InvalidArgument);
  EXPECT_THROW(register_space("a:b", nullptr), InvalidArgument);
}

}  // namespace
}  // namespace pdspace
