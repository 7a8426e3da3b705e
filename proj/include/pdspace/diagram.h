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

#ifndef PDSPACE_DIAGRAM_H_
#define PDSPACE_DIAGRAM_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pdspace/ext_real.h"
#include "pdspace/metric_pair.h"
#include "pdspace/point.h"

namespace pdspace {

struct DiagramEntry {
  Point point;
  std::uint64_t mult = 1;

  friend bool operator==(const DiagramEntry&, const DiagramEntry&) = default;
};

// A finite persistence diagram: a formal sum of points of X \ A with positive
// multiplicities. Entries are kept sorted by payload with duplicates merged,
// so two diagrams are equal iff their entry lists are equal.
class Diagram {
 public:
  // The empty diagram 0.
  explicit Diagram(SpaceHandle space);
  // Points of A and zero multiplicities are InvalidArgument.
  Diagram(SpaceHandle space, std::vector<DiagramEntry> entries);
  Diagram(SpaceHandle space, const std::vector<Point>& points);

  const SpaceHandle& space() const { return space_; }
  std::span<const DiagramEntry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  // |alpha|, the sum of multiplicities.
  std::uint64_t cardinality() const;

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  SpaceHandle space_;
  std::vector<DiagramEntry> entries_;
};

// Throws InvalidArgument unless both diagrams live in the same space.
void require_same_space(const Diagram& a, const Diagram& b);
void require_same_space(const MetricPair& a, const MetricPair& b);

Diagram add(const Diagram& a, const Diagram& b);

// u_delta(alpha): the entries with d(x, A) >= delta.
Diagram upper_part(const Diagram& alpha, double delta);
// l_delta(alpha): the entries with 0 < d(x, A) < delta.
Diagram lower_part(const Diagram& alpha, double delta);

// ||(d(x_i, A))_i||_p counted with multiplicity; equals W_p(alpha, 0).
ExtReal persistence_norm(const Diagram& alpha, PNorm p);

// A countable diagram represented by a finite head and a certified bound on
// the rest: W_{tail_exponent}(alpha - head, 0) <= tail_bound.
struct TruncatedDiagram {
  Diagram head;
  ExtReal tail_bound;
  PNorm tail_exponent = PNorm::infinity();

  // An exact finite diagram (tail bound 0).
  static TruncatedDiagram exact(Diagram d) { return {std::move(d), ExtReal(), PNorm::infinity()}; }
};

struct EssentialFinitenessRow {
  double eps = 0.0;
  std::uint64_t upper_count = 0;  // |u_eps(head)|
  ExtReal lower_norm_bound;       // W_p(l_eps(head), 0) + tail_bound
  // The tail may hold points at distance >= eps, so upper_count is then only
  // a count for the head.
  bool tail_may_reach_upper = false;
};

// Witnesses that |u_eps(alpha)| < inf and W_p(l_eps(alpha), 0) < inf along an
// eps schedule, with p the tail exponent.
std::vector<EssentialFinitenessRow> check_essentially_p_finite(
    const TruncatedDiagram& alpha, std::span<const double> eps_schedule);

}  // namespace pdspace

#endif  // PDSPACE_DIAGRAM_H_
