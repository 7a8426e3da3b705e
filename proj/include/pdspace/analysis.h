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

#ifndef PDSPACE_ANALYSIS_H_
#define PDSPACE_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdspace/diagram.h"
#include "pdspace/ext_real.h"
#include "pdspace/metric_pair.h"
#include "pdspace/point.h"

namespace pdspace {

// Witnesses at one scale eps.
struct ScaleReport {
  double eps = 0.0;
  // max over the family of |u_eps(head)|.
  std::uint64_t upper_count = 0;
  // False when some tail bound is >= eps, so tails may add upper points.
  bool upper_count_certified = true;
  // Greedy net over the distinct points of u_eps(S), in the ground metric.
  double net_radius = 0.0;
  std::vector<Point> net_centers;
  // max over u_eps(S) of the distance to the nearest center.
  double net_covering = 0.0;
  // Largest delta on the grid eps * 2^-j with
  // ||(W_p(l_delta(head), 0), tail_bound)||_p < eps for every member.
  std::optional<double> delta;
};

struct DiagnosticsReport {
  PNorm p = PNorm::infinity();
  std::vector<double> eps_schedule;
  std::vector<ScaleReport> scales;
  // Conditions witnessed at every sampled scale.
  bool uniformly_upper_finite = true;
  bool upper_totally_bounded = true;
  bool uniformly_lower_vanishing = true;
  // Metadata of the space; with it the witnesses above also speak for
  // relative compactness.
  bool space_complete = false;
};

// Compactness witnesses for a finite family at the given scales. The
// schedule must be positive and strictly decreasing; net_factor > 0 scales
// the net radius to net_factor * eps.
DiagnosticsReport diagnose_set(std::span<const TruncatedDiagram> family, PNorm p,
                               std::span<const double> eps_schedule, double net_factor = 1.0);
DiagnosticsReport diagnose_set(std::span<const Diagram> family, PNorm p,
                               std::span<const double> eps_schedule, double net_factor = 1.0);

// alpha as an unordered 2n-tuple, padded with the base point.
struct SymmetricTuple {
  SpaceHandle space;
  std::size_t n = 0;
  std::vector<Point> slots;  // sorted, size 2n
};

// Requires a pointed space and |alpha| <= n.
SymmetricTuple embed_symmetric(const Diagram& alpha, std::size_t n);

// min over permutations tau of ||(d(u_i, v_tau(i)))_i||_p.
ExtReal symmetric_dist(const SymmetricTuple& u, const SymmetricTuple& v, PNorm p);

// A sequence beta_1, ..., beta_count inside the open eps-ball about alpha
// whose members are pairwise at least eps / 4 apart (exactly d(x, A) apart
// for p = inf). Both bounds are checked before returning. Requires
// 0 < eps < min over supp(alpha) of d(., A) and a space with approach
// points.
std::vector<Diagram> local_noncompactness_witnesses(const Diagram& alpha, double eps, PNorm p,
                                                    std::size_t count);

// The wedge of circles diagram sum_n x_n with x_n = (n, pi / n^3), whose
// n-th point lies at distance pi / n^2 from the base point.
struct SeriesBracket {
  double partial = 0.0;     // sum_{n <= N} pi / n^2
  double tail_bound = 0.0;  // pi / N
};
// Only p = 1 is supported.
SeriesBracket circles_partial(int n, PNorm p = PNorm::finite(1.0));
// The first n points with the tail certified for p = 1.
TruncatedDiagram circles_diagram(int n);

// On halfplane:l1, alpha = (0,1) + (n-1)(0,10) and beta = (10,11) + (n-1)(0,11).
// W_p(alpha, beta) = (n + 1)^(1/p).
std::pair<Diagram, Diagram> non_length_space_instance(int n);

}  // namespace pdspace

#endif  // PDSPACE_ANALYSIS_H_
