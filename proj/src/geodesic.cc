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

#include "pdspace/geodesic.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pdspace/errors.h"

namespace pdspace {
namespace {

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("path parameter must lie in [0, 1], got " + std::to_string(t));
  }
}

// Resolves a side of a pair to a concrete point; the class A becomes the
// nearest point of A to the partner.
Point resolve(const MetricPair& space, const PointOrA& side, const PointOrA& partner) {
  if (side) return *side;
  return project_to_A(space, *partner).point;
}

double w(const Diagram& a, const Diagram& b, PNorm p) { return wasserstein(a, b, p).value.value(); }

double sum_over(const std::vector<double>& grid, const std::function<Diagram(double)>& eval,
                PNorm p) {
  double total = 0.0;
  Diagram prev = eval(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Diagram next = eval(grid[i]);
    total += w(prev, next, p);
    prev = std::move(next);
  }
  return total;
}

std::vector<double> uniform_grid(int n) {
  if (n < 1) throw InvalidArgument("partition size must be at least 1");
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) / n;
  return grid;
}

Diagram remove_one(const Diagram& d, const Point& x) {
  std::vector<DiagramEntry> entries(d.entries().begin(), d.entries().end());
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    if (it->point == x) {
      if (--it->mult == 0) entries.erase(it);
      return Diagram(d.space(), std::move(entries));
    }
  }
  throw InvalidArgument("point " + x.to_string() + " is not in the diagram");
}

}  // namespace

GeodesicPath::GeodesicPath(Diagram start, Diagram end, Matching matching, PNorm p)
    : start_(std::move(start)),
      end_(std::move(end)),
      matching_(std::move(matching)),
      p_(p),
      cost_(cost_p(matching_, p)) {
  validate_matching(matching_, start_, end_);
  const MetricPair& space = *start_.space();
  if (!space.capabilities().geodesic) {
    throw CapabilityError("space " + space.id() + " has no geodesics");
  }
  if (cost_.is_infinite()) {
    throw InvalidArgument("no path of finite length: the matching has infinite cost");
  }
  for (const auto& pair : matching_.pairs()) {
    tracks_.push_back({resolve(space, pair.a, pair.b), resolve(space, pair.b, pair.a), pair.mult});
  }
}

Diagram GeodesicPath::eval(double t) const {
  check_t(t);
  const MetricPair& space = *start_.space();
  std::vector<DiagramEntry> entries;
  entries.reserve(tracks_.size());
  for (const auto& track : tracks_) {
    Point x = space.geodesic_point(track.from, track.to, t);
    if (!space.in_A(x)) entries.push_back({std::move(x), track.mult});
  }
  return Diagram(start_.space(), std::move(entries));
}

PiecewisePath::PiecewisePath(std::vector<GeodesicPath> legs) : legs_(std::move(legs)) {
  if (legs_.empty()) throw InvalidArgument("a path needs at least one leg");
  for (std::size_t i = 1; i < legs_.size(); ++i) {
    if (!(legs_[i - 1].end() == legs_[i].start())) {
      throw InvalidArgument("leg " + std::to_string(i) + " does not start where leg " +
                            std::to_string(i - 1) + " ends");
    }
  }
}

Diagram PiecewisePath::eval(double t) const {
  check_t(t);
  const double scaled = t * static_cast<double>(legs_.size());
  const std::size_t leg = std::min(static_cast<std::size_t>(scaled), legs_.size() - 1);
  const double local = std::clamp(scaled - static_cast<double>(leg), 0.0, 1.0);
  return legs_[leg].eval(local);
}

GeodesicPath geodesic(const Diagram& alpha, const Diagram& beta, PNorm p) {
  require_same_space(alpha, beta);
  const Capabilities caps = alpha.space()->capabilities();
  if (!caps.geodesic || !caps.distance_minimizing) {
    throw CapabilityError("geodesics need a geodesic space with A distance minimizing; " +
                          alpha.space()->id() + " is not");
  }
  WassersteinResult r = wasserstein(alpha, beta, p);
  if (r.value.is_infinite()) {
    throw InvalidArgument("W_p(alpha, beta) is infinite; no geodesic exists");
  }
  return GeodesicPath(alpha, beta, *std::move(r.matching), p);
}

double path_length(const GeodesicPath& path, int n) {
  return sum_over(uniform_grid(n), [&](double t) { return path.eval(t); }, path.p());
}

double path_length(const PiecewisePath& path, int n) {
  std::vector<double> grid = uniform_grid(n);
  const std::size_t legs = path.legs().size();
  for (std::size_t k = 1; k < legs; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(legs));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return sum_over(grid, [&](double t) { return path.eval(t); }, path.legs().front().p());
}

std::vector<GeodesicPath> distinct_geodesics(const Diagram& alpha, const Diagram& beta, PNorm p,
                                             std::size_t max_count) {
  require_same_space(alpha, beta);
  const Capabilities caps = alpha.space()->capabilities();
  if (!caps.geodesic || !caps.distance_minimizing) {
    throw CapabilityError("geodesics need a geodesic space with A distance minimizing");
  }
  std::vector<GeodesicPath> paths;
  for (auto& sigma : optimal_matchings(alpha, beta, p, max_count)) {
    paths.emplace_back(alpha, beta, std::move(sigma), p);
  }
  return paths;
}

PiecewisePath sequential_path(const Diagram& alpha, const Diagram& beta, PNorm p) {
  if (p.is_infinite() || p.exponent() != 1.0) {
    throw InvalidArgument("one-at-a-time paths realize W_p only for p = 1");
  }
  const SpaceHandle& space = alpha.space();
  const GeodesicPath direct = geodesic(alpha, beta, p);

  // Units of the optimal matching, pairs leaving X \ A first.
  std::vector<MatchedPair> moves;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& pair : direct.matching().pairs()) {
      const bool from_off_A = pair.a && !space->in_A(*pair.a);
      if (from_off_A != (pass == 0)) continue;
      for (std::uint64_t k = 0; k < pair.mult; ++k) moves.push_back({pair.a, pair.b, 1});
    }
  }
  if (moves.empty()) return PiecewisePath({direct});

  std::vector<GeodesicPath> legs;
  Diagram current = alpha;
  for (const auto& move : moves) {
    Diagram rest = current;
    if (move.a && !space->in_A(*move.a)) rest = remove_one(current, *move.a);
    std::vector<MatchedPair> pairs;
    for (const auto& e : rest.entries()) pairs.push_back({e.point, e.point, e.mult});
    pairs.push_back(move);
    Diagram next = rest;
    if (move.b && !space->in_A(*move.b)) next = add(rest, Diagram(space, {*move.b}));
    legs.emplace_back(current, next, Matching(space, std::move(pairs)), p);
    current = std::move(next);
  }
  return PiecewisePath(std::move(legs));
}

double alexandrov_residual(const Diagram& alpha, const Diagram& beta, const Diagram& xi, double t,
                           PNorm p) {
  if (p.is_infinite() || p.exponent() != 2.0) {
    throw InvalidArgument("the Alexandrov comparison is defined for W_2 only");
  }
  check_t(t);
  require_same_space(alpha, xi);
  const Capabilities caps = alpha.space()->capabilities();
  if (!caps.geodesic || !caps.distance_minimizing || !caps.nonneg_curvature) {
    throw CapabilityError(
        "space " + alpha.space()->id() +
        " is not flagged geodesic, distance minimizing and non-negatively curved");
  }
  const GeodesicPath path = geodesic(alpha, beta, p);
  const double to_mid = w(xi, path.eval(t), p);
  const double to_beta = w(xi, beta, p);
  const double to_alpha = w(xi, alpha, p);
  const double span = path.cost().value();
  if (!std::isfinite(to_mid) || !std::isfinite(to_beta) || !std::isfinite(to_alpha)) {
    throw InvalidArgument("xi is at infinite W_2 distance");
  }
  return to_mid * to_mid -
         (t * to_beta * to_beta + (1.0 - t) * to_alpha * to_alpha - t * (1.0 - t) * span * span);
}

Retraction straight_line_contraction(const SpaceHandle& space) {
  const std::string id = space->id();
  if (id != "ray" && id.rfind("pointed_euclidean", 0) != 0) {
    throw CapabilityError("no built-in contraction for " + id);
  }
  const Point base = *space->base_point();
  return [space, base](const Point& x, double t) { return space->geodesic_point(x, base, t); };
}

Diagram retract_diagram(const Retraction& h, const Diagram& alpha, double t) {
  check_t(t);
  const SpaceHandle& space = alpha.space();
  if (!is_pointed(*space)) {
    throw CapabilityError("retractions need a pointed space; " + space->id() + " is not");
  }
  std::vector<DiagramEntry> entries;
  for (const auto& e : alpha.entries()) {
    Point y = space->canonicalize(h(e.point, t));
    if (!space->in_A(y)) entries.push_back({std::move(y), e.mult});
  }
  return Diagram(space, std::move(entries));
}

}  // namespace pdspace
