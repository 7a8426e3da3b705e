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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pdspace/assignment.h"
#include "pdspace/errors.h"
#include "pdspace/matching.h"

namespace pdspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Halving steps tried when searching for delta.
constexpr int kMaxDeltaSteps = 1100;

void check_schedule(std::span<const double> eps_schedule, double net_factor) {
  if (eps_schedule.empty()) throw InvalidArgument("eps schedule is empty");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double e = eps_schedule[i];
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("eps schedule entries must be positive and finite");
    }
    if (i > 0 && !(e < eps_schedule[i - 1])) {
      throw InvalidArgument("eps schedule must be strictly decreasing");
    }
  }
  if (!(net_factor > 0.0) || !std::isfinite(net_factor)) {
    throw InvalidArgument("net factor must be positive and finite");
  }
}

// Farthest-point greedy net, seeded with the smallest point.
void build_net(const MetricPair& space, std::vector<Point> points, ScaleReport& out) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return;
  std::vector<double> gap(points.size(), kInf);
  std::size_t next = 0;
  while (true) {
    const Point& center = points[next];
    out.net_centers.push_back(center);
    for (std::size_t i = 0; i < points.size(); ++i) {
      gap[i] = std::min(gap[i], space.dist(points[i], center).value());
    }
    next = static_cast<std::size_t>(std::max_element(gap.begin(), gap.end()) - gap.begin());
    if (gap[next] <= out.net_radius) break;
  }
  out.net_covering = gap[next];
}

// ||(W_p(l_delta(head), 0), tail)||_p < eps for every member.
bool lower_vanishes(std::span<const TruncatedDiagram> family, PNorm p, double eps, double delta) {
  for (const auto& d : family) {
    const ExtReal head = persistence_norm(lower_part(d.head, delta), p);
    if (!(pnorm(head, d.tail_bound, p) < ExtReal(eps))) return false;
  }
  return true;
}

std::optional<double> find_delta(std::span<const TruncatedDiagram> family, PNorm p, double eps) {
  for (const auto& d : family) {
    if (d.tail_bound > ExtReal() && d.tail_exponent > p) return std::nullopt;
  }
  double delta = eps;
  for (int j = 0; j < kMaxDeltaSteps && delta > 0.0; ++j, delta *= 0.5) {
    if (lower_vanishes(family, p, eps, delta)) return delta;
  }
  return std::nullopt;
}

}  // namespace

DiagnosticsReport diagnose_set(std::span<const TruncatedDiagram> family, PNorm p,
                               std::span<const double> eps_schedule, double net_factor) {
  check_schedule(eps_schedule, net_factor);
  DiagnosticsReport report;
  report.p = p;
  report.eps_schedule.assign(eps_schedule.begin(), eps_schedule.end());
  if (family.empty()) return report;
  const SpaceHandle& space = family.front().head.space();
  for (const auto& d : family) require_same_space(d.head, family.front().head);
  report.space_complete = space->capabilities().complete;

  for (const double eps : eps_schedule) {
    ScaleReport scale;
    scale.eps = eps;
    scale.net_radius = eps * net_factor;
    std::vector<Point> upper_points;
    for (const auto& d : family) {
      const Diagram upper = upper_part(d.head, eps);
      scale.upper_count = std::max(scale.upper_count, upper.cardinality());
      if (d.tail_bound >= ExtReal(eps)) scale.upper_count_certified = false;
      for (const auto& e : upper.entries()) upper_points.push_back(e.point);
    }
    build_net(*space, std::move(upper_points), scale);
    scale.delta = find_delta(family, p, eps);

    report.uniformly_upper_finite &= scale.upper_count_certified;
    report.upper_totally_bounded &= scale.net_covering <= scale.net_radius;
    report.uniformly_lower_vanishing &= scale.delta.has_value();
    report.scales.push_back(std::move(scale));
  }
  return report;
}

DiagnosticsReport diagnose_set(std::span<const Diagram> family, PNorm p,
                               std::span<const double> eps_schedule, double net_factor) {
  std::vector<TruncatedDiagram> exact;
  exact.reserve(family.size());
  for (const auto& d : family) exact.push_back(TruncatedDiagram::exact(d));
  return diagnose_set(std::span<const TruncatedDiagram>(exact), p, eps_schedule, net_factor);
}

SymmetricTuple embed_symmetric(const Diagram& alpha, std::size_t n) {
  const SpaceHandle& space = alpha.space();
  const std::optional<Point> base = space->base_point();
  if (!base) throw CapabilityError("space " + space->id() + " is not pointed");
  if (alpha.cardinality() > n) {
    throw InvalidArgument("diagram has " + std::to_string(alpha.cardinality()) +
                          " points, more than n = " + std::to_string(n));
  }
  SymmetricTuple u{space, n, {}};
  u.slots.reserve(2 * n);
  for (const auto& e : alpha.entries()) {
    for (std::uint64_t k = 0; k < e.mult; ++k) u.slots.push_back(e.point);
  }
  while (u.slots.size() < 2 * n) u.slots.push_back(*base);
  std::sort(u.slots.begin(), u.slots.end());
  return u;
}

ExtReal symmetric_dist(const SymmetricTuple& u, const SymmetricTuple& v, PNorm p) {
  require_same_space(*u.space, *v.space);
  if (u.n != v.n) throw InvalidArgument("tuples come from different symmetric products");
  const std::size_t size = u.slots.size();
  assign::CostMatrix dist(size, size);
  double scale = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      dist(i, j) = u.space->dist(u.slots[i], v.slots[j]).value();
      if (std::isfinite(dist(i, j))) scale = std::max(scale, dist(i, j));
    }
  }
  if (scale == 0.0) scale = 1.0;
  std::optional<assign::Assignment> a;
  if (p.is_infinite()) {
    a = assign::bottleneck_assignment(dist);
  } else {
    assign::CostMatrix powered(size, size);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        const double d = dist(i, j);
        powered(i, j) = std::isfinite(d) ? std::pow(d / scale, p.exponent()) : d;
      }
    }
    a = assign::min_cost_assignment(powered);
  }
  if (!a) return ExtReal::infinity();
  std::vector<ExtReal> cells(size);
  for (std::size_t i = 0; i < size; ++i) cells[i] = ExtReal(dist(i, (*a)[i]));
  return pnorm(std::span<const ExtReal>(cells), p);
}

std::vector<Diagram> local_noncompactness_witnesses(const Diagram& alpha, double eps, PNorm p,
                                                    std::size_t count) {
  const SpaceHandle& space = alpha.space();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
  for (const auto& e : alpha.entries()) {
    if (!(ExtReal(eps) < space->dist_to_A(e.point))) {
      throw InvalidArgument("eps must be below the distance to A of every point of alpha");
    }
  }
  const auto approach = [&](double c) {
    std::optional<Point> x = space->approach_point(c);
    if (!x) throw CapabilityError("space " + space->id() + " has no points approaching A");
    return space->canonicalize(*x);
  };

  std::vector<Diagram> betas;
  std::vector<double> lower_bounds;  // pairwise bound each witness must satisfy
  if (p.is_infinite()) {
    const Point x = approach(0.6 * eps);
    const ExtReal gap = space->dist_to_A(x);
    for (std::size_t n = 1; n <= count; ++n) {
      betas.push_back(add(alpha, Diagram(space, {{x, n}})));
    }
    lower_bounds.assign(count, gap.value());
  } else {
    const double q = p.exponent();
    int previous_m = 0;
    double previous_gap = eps;
    for (std::size_t n = 1; n <= count; ++n) {
      const double target = eps * std::exp2(-(1.05 * static_cast<double>(n) + 0.5) / q);
      const Point x = approach(target);
      const double gap = space->dist_to_A(x).value();
      if (!(gap > 0.0 && gap < previous_gap * std::exp2(-1.0 / q))) {
        throw Error("approach points do not shrink fast enough at n = " + std::to_string(n));
      }
      // eps 2^(-(m+1)/p) <= gap < eps 2^(-m/p)
      int m = static_cast<int>(std::floor(q * std::log2(eps / gap)));
      while (m > 0 && gap >= eps * std::exp2(-m / q)) --m;
      while (gap < eps * std::exp2(-(m + 1) / q)) ++m;
      if (m < previous_m + 1 || m > 62) {
        throw Error("multiplicity exponent out of range at n = " + std::to_string(n));
      }
      betas.push_back(add(alpha, Diagram(space, {{x, std::uint64_t{1} << m}})));
      lower_bounds.push_back(eps / 4.0 - 1e-12);
      previous_m = m;
      previous_gap = gap;
    }
  }

  for (std::size_t n = 0; n < betas.size(); ++n) {
    if (!(wasserstein(betas[n], alpha, p).value < ExtReal(eps))) {
      throw Error("witness " + std::to_string(n + 1) + " left the eps-ball");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const ExtReal bound = card_mismatch_lower_bound(betas[n], betas[k], p);
      if (!(bound >= ExtReal(lower_bounds[n]))) {
        throw Error("witnesses " + std::to_string(k + 1) + " and " + std::to_string(n + 1) +
                    " are too close");
      }
    }
  }
  return betas;
}

SeriesBracket circles_partial(int n, PNorm p) {
  if (p.is_infinite() || p.exponent() != 1.0) {
    throw InvalidArgument("the circles series is closed-form only for p = 1");
  }
  if (n < 1) throw InvalidArgument("N must be positive");
  SeriesBracket out;
  // Smallest terms first.
  for (int k = n; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    out.partial += std::numbers::pi / (kk * kk);
  }
  out.tail_bound = std::numbers::pi / static_cast<double>(n);
  return out;
}

TruncatedDiagram circles_diagram(int n) {
  if (n < 1) throw InvalidArgument("N must be positive");
  const SpaceHandle space = make_space("wedge_circles");
  std::vector<DiagramEntry> entries;
  for (int k = 1; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    entries.push_back({Point({kk, std::numbers::pi / (kk * kk * kk)}), 1});
  }
  return {Diagram(space, std::move(entries)), ExtReal(std::numbers::pi / static_cast<double>(n)),
          PNorm::finite(1.0)};
}

std::pair<Diagram, Diagram> non_length_space_instance(int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  const SpaceHandle space = make_space("halfplane:l1");
  const std::uint64_t rest = static_cast<std::uint64_t>(n - 1);
  std::vector<DiagramEntry> a{{Point({0.0, 1.0}), 1}};
  std::vector<DiagramEntry> b{{Point({10.0, 11.0}), 1}};
  if (rest > 0) {
    a.push_back({Point({0.0, 10.0}), rest});
    b.push_back({Point({0.0, 11.0}), rest});
  }
  return {Diagram(space, std::move(a)), Diagram(space, std::move(b))};
}

}  // namespace pdspace
