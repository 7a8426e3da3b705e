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

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "pdspace/errors.h"

namespace pdspace {
namespace {

std::vector<DiagramEntry> canonical_entries(const MetricPair& space,
                                            std::vector<DiagramEntry> entries) {
  for (auto& e : entries) {
    if (e.mult == 0) {
      throw InvalidArgument("zero multiplicity for " + e.point.to_string());
    }
    e.point = space.canonicalize(e.point);
    if (space.in_A(e.point)) {
      throw InvalidArgument("point " + e.point.to_string() + " lies in A of " + space.id());
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const DiagramEntry& a, const DiagramEntry& b) { return a.point < b.point; });
  std::vector<DiagramEntry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().point == e.point) {
      if (merged.back().mult > std::numeric_limits<std::uint64_t>::max() - e.mult) {
        throw InvalidArgument("multiplicity overflow");
      }
      merged.back().mult += e.mult;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return merged;
}

Diagram filter(const Diagram& alpha, double delta, bool keep_upper) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const ExtReal bound(delta);
  std::vector<DiagramEntry> kept;
  for (const auto& e : alpha.entries()) {
    const bool upper = alpha.space()->dist_to_A(e.point) >= bound;
    if (upper == keep_upper) kept.push_back(e);
  }
  return Diagram(alpha.space(), std::move(kept));
}

}  // namespace

Diagram::Diagram(SpaceHandle space) : space_(std::move(space)) {
  if (!space_) throw InvalidArgument("diagram needs a space");
}

Diagram::Diagram(SpaceHandle space, std::vector<DiagramEntry> entries) : Diagram(std::move(space)) {
  entries_ = canonical_entries(*space_, std::move(entries));
}

Diagram::Diagram(SpaceHandle space, const std::vector<Point>& points) : Diagram(std::move(space)) {
  std::vector<DiagramEntry> entries;
  entries.reserve(points.size());
  for (const auto& x : points) entries.push_back({x, 1});
  entries_ = canonical_entries(*space_, std::move(entries));
}

std::uint64_t Diagram::cardinality() const {
  std::uint64_t n = 0;
  for (const auto& e : entries_) n += e.mult;
  return n;
}

bool operator==(const Diagram& a, const Diagram& b) {
  return a.space_->id() == b.space_->id() && a.entries_ == b.entries_;
}

void require_same_space(const MetricPair& a, const MetricPair& b) {
  if (&a != &b && a.id() != b.id()) {
    throw InvalidArgument("space mismatch: " + a.id() + " vs " + b.id());
  }
}

void require_same_space(const Diagram& a, const Diagram& b) {
  require_same_space(*a.space(), *b.space());
}

Diagram add(const Diagram& a, const Diagram& b) {
  require_same_space(a, b);
  std::vector<DiagramEntry> entries(a.entries().begin(), a.entries().end());
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return Diagram(a.space(), std::move(entries));
}

Diagram upper_part(const Diagram& alpha, double delta) { return filter(alpha, delta, true); }
Diagram lower_part(const Diagram& alpha, double delta) { return filter(alpha, delta, false); }

ExtReal persistence_norm(const Diagram& alpha, PNorm p) {
  std::vector<WeightedValue> values;
  values.reserve(alpha.entries().size());
  for (const auto& e : alpha.entries()) {
    values.push_back({alpha.space()->dist_to_A(e.point), e.mult});
  }
  return pnorm(values, p);
}

std::vector<EssentialFinitenessRow> check_essentially_p_finite(
    const TruncatedDiagram& alpha, std::span<const double> eps_schedule) {
  std::vector<EssentialFinitenessRow> rows;
  for (double eps : eps_schedule) {
    EssentialFinitenessRow row;
    row.eps = eps;
    row.upper_count = upper_part(alpha.head, eps).cardinality();
    row.lower_norm_bound =
        persistence_norm(lower_part(alpha.head, eps), alpha.tail_exponent) + alpha.tail_bound;
    row.tail_may_reach_upper = alpha.tail_bound >= ExtReal(eps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pdspace
