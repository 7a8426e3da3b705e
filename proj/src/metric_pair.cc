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

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "builtin_spaces.h"
#include "pdspace/errors.h"

namespace pdspace {
namespace {

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, SpaceFactory, std::less<>>& registry() {
  static std::map<std::string, SpaceFactory, std::less<>> factories;
  return factories;
}

class CustomSpace final : public MetricPair {
 public:
  explicit CustomSpace(SpaceCallbacks cb) : cb_(std::move(cb)) {}

  std::string id() const override { return cb_.id; }
  Capabilities capabilities() const override { return cb_.capabilities; }

  Point canonicalize(const Point& x) const override {
    return cb_.canonicalize ? cb_.canonicalize(x) : x;
  }
  ExtReal dist(const Point& x, const Point& y) const override { return cb_.dist(x, y); }
  ExtReal dist_to_A(const Point& x) const override { return cb_.dist_to_A(x); }
  bool in_A(const Point& x) const override { return cb_.in_A(x); }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    return cb_.nearest_in_A ? cb_.nearest_in_A(x) : std::nullopt;
  }
  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    if (!cb_.geodesic_point) return MetricPair::geodesic_point(x, y, t);
    return cb_.geodesic_point(x, y, t);
  }
  std::optional<Point> approach_point(double c) const override {
    return cb_.approach_point ? cb_.approach_point(c) : std::nullopt;
  }
  std::optional<Point> base_point() const override { return cb_.base_point; }

 private:
  SpaceCallbacks cb_;
};

class QuotientSpace final : public MetricPair {
 public:
  QuotientSpace(SpaceHandle base, PNorm q) : base_(std::move(base)), q_(q) {}

  std::string id() const override { return base_->id() + "/d_" + q_.to_string(); }

  Capabilities capabilities() const override {
    return {.distance_minimizing = base_->capabilities().distance_minimizing};
  }
  PointFormat point_format() const override { return base_->point_format(); }

  Point canonicalize(const Point& x) const override { return base_->canonicalize(x); }
  ExtReal dist(const Point& x, const Point& y) const override {
    return min(base_->dist(x, y), pnorm(base_->dist_to_A(x), base_->dist_to_A(y), q_));
  }
  ExtReal dist_to_A(const Point& x) const override { return base_->dist_to_A(x); }
  bool in_A(const Point& x) const override { return base_->in_A(x); }

  // Under d_q every point of A is at distance d(x, A) from x.
  std::optional<Projection> nearest_in_A(const Point& x) const override {
    auto nearest = base_->nearest_in_A(x);
    if (!nearest) return std::nullopt;
    return Projection{std::move(nearest->point), base_->dist_to_A(x)};
  }
  std::optional<Point> approach_point(double c) const override { return base_->approach_point(c); }
  std::optional<Point> base_point() const override { return base_->base_point(); }

 private:
  SpaceHandle base_;
  PNorm q_;
};

}  // namespace

std::optional<Projection> MetricPair::nearest_in_A(const Point&) const { return std::nullopt; }

Point MetricPair::geodesic_point(const Point&, const Point&, double) const {
  throw CapabilityError("space " + id() + " has no geodesics");
}

std::optional<Point> MetricPair::approach_point(double) const { return std::nullopt; }

std::optional<Point> MetricPair::base_point() const { return std::nullopt; }

SpaceHandle make_space(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::optional<std::string_view> params;
  if (colon != std::string_view::npos) params = spec.substr(colon + 1);

  if (auto space = internal::make_builtin_space(name, params)) return space;

  SpaceFactory factory;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end()) {
      throw InvalidArgument("unknown space '" + std::string(spec) + "'");
    }
    factory = it->second;
  }
  auto space = factory(params.value_or(""));
  if (!space) throw InvalidArgument("factory for '" + std::string(name) + "' returned null");
  return space;
}

void register_space(const std::string& name, SpaceFactory factory) {
  if (name.empty() || name.find(':') != std::string::npos) {
    throw InvalidArgument("space names must be non-empty and contain no ':'");
  }
  if (internal::is_builtin_name(name)) {
    throw InvalidArgument("cannot replace built-in space '" + name + "'");
  }
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[name] = std::move(factory);
}

SpaceHandle make_custom_space(SpaceCallbacks callbacks) {
  if (!callbacks.dist || !callbacks.dist_to_A || !callbacks.in_A) {
    throw InvalidArgument("custom spaces need dist, dist_to_A and in_A callbacks");
  }
  if (callbacks.capabilities.geodesic && !callbacks.geodesic_point) {
    throw InvalidArgument("a geodesic custom space needs a geodesic_point callback");
  }
  return std::make_shared<CustomSpace>(std::move(callbacks));
}

SpaceHandle make_quotient_space(SpaceHandle base, PNorm q) {
  if (!base) throw InvalidArgument("null base space");
  return std::make_shared<QuotientSpace>(std::move(base), q);
}

ExtReal dist_to_A(const MetricPair& space, const Point& x) {
  return space.dist_to_A(space.canonicalize(x));
}

Projection project_to_A(const MetricPair& space, const Point& x) {
  const Point cx = space.canonicalize(x);
  if (!space.capabilities().distance_minimizing) {
    throw CapabilityError("A is not distance minimizing in " + space.id() +
                          "; nearest points and optimal matchings need not exist");
  }
  if (space.dist_to_A(cx).is_infinite()) {
    throw InvalidArgument("point " + cx.to_string() + " is at infinite distance from A");
  }
  auto nearest = space.nearest_in_A(cx);
  if (!nearest) {
    throw CapabilityError("no nearest point of A for " + cx.to_string() + " in " + space.id());
  }
  return *std::move(nearest);
}

ExtReal quotient_dist(const MetricPair& space, PNorm p, const PointOrA& x, const PointOrA& y) {
  if (!x && !y) return ExtReal();
  if (!x) return dist_to_A(space, *y);
  if (!y) return dist_to_A(space, *x);
  const Point cx = space.canonicalize(*x);
  const Point cy = space.canonicalize(*y);
  return min(space.dist(cx, cy), pnorm(space.dist_to_A(cx), space.dist_to_A(cy), p));
}

bool in_offset(const MetricPair& space, double delta, const Point& x) {
  if (!(delta > 0.0)) throw InvalidArgument("offset radius must be positive");
  return dist_to_A(space, x) < ExtReal(delta);
}

bool is_pointed(const MetricPair& space) { return space.base_point().has_value(); }

}  // namespace pdspace
