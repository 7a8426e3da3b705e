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

#ifndef PDSPACE_METRIC_PAIR_H_
#define PDSPACE_METRIC_PAIR_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pdspace/ext_real.h"
#include "pdspace/point.h"

namespace pdspace {

struct Capabilities {
  // Every point at finite distance from A has a nearest point in A.
  bool distance_minimizing = false;
  // geodesic_point() yields constant-speed geodesics.
  bool geodesic = false;
  bool length_space = false;
  // Alexandrov curvature bounded below by zero.
  bool nonneg_curvature = false;
  // The underlying metric space is complete.
  bool complete = false;
};

// How points of a space are written in JSON.
enum class PointFormat {
  kCoordinates,  // [x0, x1, ...] with "inf" / "-inf" for infinities
  kArcAngle,     // {"arc": n, "theta": t}
};

struct Projection {
  Point point;
  ExtReal distance;
};

// A space X with an extended pseudometric d and a closed subset A.
//
// Implementations are immutable; all member functions are safe to call
// concurrently. Member functions assume their Point arguments passed
// validate(); the free functions below validate first.
class MetricPair {
 public:
  virtual ~MetricPair() = default;

  // Canonical spec string, e.g. "halfplane:linf".
  virtual std::string id() const = 0;
  virtual Capabilities capabilities() const = 0;
  virtual PointFormat point_format() const { return PointFormat::kCoordinates; }

  // Returns the canonical representative of x or throws InvalidArgument if x
  // is not a point of this space.
  virtual Point canonicalize(const Point& x) const = 0;

  virtual ExtReal dist(const Point& x, const Point& y) const = 0;
  virtual ExtReal dist_to_A(const Point& x) const = 0;
  virtual bool in_A(const Point& x) const = 0;

  // Nearest point of A, lexicographically smallest among ties. Empty when
  // the space has no closed form or the infimum is not attained.
  virtual std::optional<Projection> nearest_in_A(const Point& x) const;

  // Constant-speed geodesic from x to y evaluated at t in [0, 1]. Throws
  // CapabilityError when the space is not geodesic.
  virtual Point geodesic_point(const Point& x, const Point& y, double t) const;

  // A point with 0 < d(x, A) <= c, used to build sequences that approach A.
  // Empty when A is isolated or the space has no such construction.
  virtual std::optional<Point> approach_point(double c) const;

  // The single point of A for pointed spaces.
  virtual std::optional<Point> base_point() const;
};

using SpaceHandle = std::shared_ptr<const MetricPair>;

// Builds a space from its spec string:
//   halfplane:l1 | halfplane:l2 | halfplane:linf
//   pointed_euclidean:<k>[:<b1>,...,<bk>]
//   ray | wedge_circles | wedge_intervals
//   <name>[:<params>] for spaces added with register_space().
SpaceHandle make_space(std::string_view spec);

using SpaceFactory = std::function<SpaceHandle(std::string_view params)>;

// Makes make_space("<name>[:params]") call factory(params). Built-in names
// cannot be replaced. Closedness of A is the caller's responsibility.
void register_space(const std::string& name, SpaceFactory factory);

// Callback-backed space for user registration.
struct SpaceCallbacks {
  std::string id;
  Capabilities capabilities;
  std::function<ExtReal(const Point&, const Point&)> dist;
  std::function<ExtReal(const Point&)> dist_to_A;
  std::function<bool(const Point&)> in_A;
  // Optional; throw InvalidArgument for foreign points.
  std::function<Point(const Point&)> canonicalize;
  std::function<std::optional<Projection>(const Point&)> nearest_in_A;
  std::function<Point(const Point&, const Point&, double)> geodesic_point;
  std::function<std::optional<Point>(double)> approach_point;
  std::optional<Point> base_point;
};
SpaceHandle make_custom_space(SpaceCallbacks callbacks);

// The pair (X, d_q, A) where d_q is the quotient metric below. Useful for
// checking that replacing d by d_q leaves W_p unchanged for q <= p.
SpaceHandle make_quotient_space(SpaceHandle base, PNorm q);

// Validates x and returns inf_{a in A} d(x, a).
ExtReal dist_to_A(const MetricPair& space, const Point& x);

// Nearest point of A and its distance. Throws CapabilityError when the space
// is not distance minimizing or the infimum is not attained, and
// InvalidArgument when d(x, A) is infinite.
Projection project_to_A(const MetricPair& space, const Point& x);

// d_p(x, y) = min(d(x, y), ||(d(x, A), d(y, A))||_p); nullopt stands for
// the collapsed class A.
ExtReal quotient_dist(const MetricPair& space, PNorm p, const PointOrA& x, const PointOrA& y);

// True iff d(x, A) < delta. Throws InvalidArgument unless delta > 0.
bool in_offset(const MetricPair& space, double delta, const Point& x);

// True for spaces whose A is a single point.
bool is_pointed(const MetricPair& space);

}  // namespace pdspace

#endif  // PDSPACE_METRIC_PAIR_H_
