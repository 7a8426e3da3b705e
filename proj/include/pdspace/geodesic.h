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

#ifndef PDSPACE_GEODESIC_H_
#define PDSPACE_GEODESIC_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pdspace/diagram.h"
#include "pdspace/matching.h"

namespace pdspace {

// The motion of one matched pair: a constant-speed geodesic of X from
// `from` to `to`. Ends in A are resolved to concrete points of A.
struct Track {
  Point from;
  Point to;
  std::uint64_t mult = 1;
};

// The path t -> sum_i gamma_i(t) that moves every pair of a matching along
// its own geodesic simultaneously. Built from an optimal matching this is a
// geodesic of (D(X, A), W_p).
class GeodesicPath {
 public:
  // Throws CapabilityError if X is not geodesic or a side in A has no
  // nearest point, InvalidArgument if the matching does not match start and
  // end or has infinite cost.
  GeodesicPath(Diagram start, Diagram end, Matching matching, PNorm p);

  const Diagram& start() const { return start_; }
  const Diagram& end() const { return end_; }
  const Matching& matching() const { return matching_; }
  PNorm p() const { return p_; }
  std::span<const Track> tracks() const { return tracks_; }
  // cost_p of the matching; W_p(start, end) when the matching is optimal.
  ExtReal cost() const { return cost_; }

  // sum_i gamma_i(t) with points that land in A dropped. t in [0, 1].
  Diagram eval(double t) const;

 private:
  Diagram start_;
  Diagram end_;
  Matching matching_;
  PNorm p_;
  std::vector<Track> tracks_;
  ExtReal cost_;
};

// Legs traversed one after another, each in an equal share of [0, 1].
class PiecewisePath {
 public:
  // Throws InvalidArgument if legs is empty or consecutive legs do not meet.
  explicit PiecewisePath(std::vector<GeodesicPath> legs);

  std::span<const GeodesicPath> legs() const { return legs_; }
  Diagram eval(double t) const;

 private:
  std::vector<GeodesicPath> legs_;
};

// A geodesic from alpha to beta built from an optimal matching. Requires a
// geodesic space with A distance minimizing and W_p(alpha, beta) < inf.
GeodesicPath geodesic(const Diagram& alpha, const Diagram& beta, PNorm p);

// sum of W_p between samples at the uniform partition i / n, refined by the
// leg boundaries for piecewise paths.
double path_length(const GeodesicPath& path, int n);
double path_length(const PiecewisePath& path, int n);

// One path per distinct optimal matching, at most max_count. Paths whose
// midpoints differ witness non-unique geodesics.
std::vector<GeodesicPath> distinct_geodesics(const Diagram& alpha, const Diagram& beta, PNorm p,
                                             std::size_t max_count);

// For p = 1 only: moves the pairs of an optimal matching one at a time,
// points off A first, so every intermediate diagram has at most
// max(|alpha|, |beta|) points.
PiecewisePath sequential_path(const Diagram& alpha, const Diagram& beta, PNorm p);

// W_2(xi, g(t))^2 - [t W_2(xi, beta)^2 + (1 - t) W_2(xi, alpha)^2
//                    - t (1 - t) W_2(alpha, beta)^2]
// along the geodesic g from alpha to beta. Non-negative on spaces with
// curvature bounded below by zero. Only p = 2 is accepted.
double alexandrov_residual(const Diagram& alpha, const Diagram& beta, const Diagram& xi, double t,
                           PNorm p = PNorm::finite(2.0));

// H : X x [0, 1] -> X with H(x, 0) = x, H(x, 1) = x0 and H(x0, t) = x0.
using Retraction = std::function<Point(const Point& x, double t)>;

// Straight-line contraction to the base point on ray and pointed_euclidean.
Retraction straight_line_contraction(const SpaceHandle& space);

// sum_i H(x_i, t) with points landing on the base point dropped.
Diagram retract_diagram(const Retraction& h, const Diagram& alpha, double t);

}  // namespace pdspace

#endif  // PDSPACE_GEODESIC_H_
