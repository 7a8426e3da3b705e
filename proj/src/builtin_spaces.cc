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

#include "builtin_spaces.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "pdspace/errors.h"

namespace pdspace::internal {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

void require_size(const Point& x, std::size_t n, std::string_view space) {
  if (x.size() != n) {
    throw InvalidArgument("point " + x.to_string() + " does not belong to " + std::string(space) +
                          " (expected " + std::to_string(n) + " coordinates)");
  }
  for (double c : x.coords()) {
    if (std::isnan(c)) throw InvalidArgument("NaN coordinate in " + x.to_string());
  }
}

// |a - b| on the extended line with inf - inf = 0 for equal infinities.
double coord_gap(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b);
}

double lerp(double a, double b, double t) {
  if (a == b) return a;
  return (1.0 - t) * a + t * b;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("geodesic parameter t must lie in [0, 1], got " + format_double(t));
  }
}

// (R^2_<=, l_q, Delta), optionally with infinite coordinates.
class HalfPlane final : public MetricPair {
 public:
  enum class Ground { kL1, kL2, kLinf };

  explicit HalfPlane(Ground ground) : ground_(ground) {}

  std::string id() const override {
    switch (ground_) {
      case Ground::kL1:
        return "halfplane:l1";
      case Ground::kL2:
        return "halfplane:l2";
      case Ground::kLinf:
        return "halfplane:linf";
    }
    return "halfplane";
  }

  Capabilities capabilities() const override {
    return {.distance_minimizing = true,
            .geodesic = true,
            .length_space = true,
            .nonneg_curvature = ground_ == Ground::kL2,
            .complete = true};
  }

  Point canonicalize(const Point& x) const override {
    require_size(x, 2, id());
    if (!(x[0] <= x[1])) {
      throw InvalidArgument("half-plane point " + x.to_string() + " has birth > death");
    }
    return Point({x[0], x[1]});
  }

  ExtReal dist(const Point& x, const Point& y) const override {
    if (x == y) return ExtReal();
    const double g0 = coord_gap(x[0], y[0]);
    const double g1 = coord_gap(x[1], y[1]);
    if (ground_ == Ground::kLinf) return ExtReal(std::max(g0, g1));
    if (has_infinite(x) || has_infinite(y)) return ExtReal::infinity();
    if (ground_ == Ground::kL1) return ExtReal(g0 + g1);
    return ExtReal(std::hypot(g0, g1));
  }

  ExtReal dist_to_A(const Point& x) const override {
    if (in_A(x)) return ExtReal();
    if (has_infinite(x)) return ExtReal::infinity();
    return dist(x, foot(x));
  }

  bool in_A(const Point& x) const override { return x[0] == x[1]; }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    if (in_A(x)) return Projection{x, ExtReal()};
    if (has_infinite(x)) return std::nullopt;
    Point a = foot(x);
    ExtReal r = dist(x, a);
    return Projection{std::move(a), r};
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    check_t(t);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    if (dist(x, y).is_infinite()) {
      throw InvalidArgument("no geodesic between points at infinite distance");
    }
    return Point({lerp(x[0], y[0], t), lerp(x[1], y[1], t)});
  }

  std::optional<Point> approach_point(double c) const override {
    switch (ground_) {
      case Ground::kL1:
        return Point({0.0, c});
      case Ground::kL2:
        return Point({0.0, c * std::numbers::sqrt2});
      case Ground::kLinf:
        return Point({0.0, 2.0 * c});
    }
    return std::nullopt;
  }

 private:
  static bool has_infinite(const Point& x) { return std::isinf(x[0]) || std::isinf(x[1]); }

  // Nearest diagonal point of a finite off-diagonal point. Under l1 every
  // (t, t) with birth <= t <= death is nearest; (birth, birth) is the
  // lexicographic minimum.
  Point foot(const Point& x) const {
    if (ground_ == Ground::kL1) return Point({x[0], x[0]});
    const double mid = 0.5 * x[0] + 0.5 * x[1];
    return Point({mid, mid});
  }

  Ground ground_;
};

// (R^k, l_2, {base}).
class PointedEuclidean final : public MetricPair {
 public:
  explicit PointedEuclidean(std::vector<double> base) : base_(std::move(base)) {}

  std::string id() const override {
    std::string out = "pointed_euclidean:" + std::to_string(base_.size());
    const auto coords = base_.coords();
    if (std::any_of(coords.begin(), coords.end(), [](double c) { return c != 0.0; })) {
      out += ":";
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(coords[i]);
      }
    }
    return out;
  }

  Capabilities capabilities() const override {
    return {.distance_minimizing = true,
            .geodesic = true,
            .length_space = true,
            .nonneg_curvature = true,
            .complete = true};
  }

  Point canonicalize(const Point& x) const override {
    require_size(x, base_.size(), id());
    for (double c : x.coords()) {
      if (!std::isfinite(c)) throw InvalidArgument("non-finite coordinate in " + x.to_string());
    }
    return x;
  }

  ExtReal dist(const Point& x, const Point& y) const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double g = x[i] - y[i];
      sum += g * g;
    }
    return ExtReal(std::sqrt(sum));
  }

  ExtReal dist_to_A(const Point& x) const override { return dist(x, base_); }
  bool in_A(const Point& x) const override { return x == base_; }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    return Projection{base_, dist(x, base_)};
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    check_t(t);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = lerp(x[i], y[i], t);
    return Point(std::move(out));
  }

  std::optional<Point> approach_point(double c) const override {
    std::vector<double> out(base_.coords().begin(), base_.coords().end());
    out[0] += c;
    return Point(std::move(out));
  }

  std::optional<Point> base_point() const override { return base_; }

 private:
  Point base_;
};

// ([0, inf], |.|, {0}).
class Ray final : public MetricPair {
 public:
  std::string id() const override { return "ray"; }

  Capabilities capabilities() const override {
    return {.distance_minimizing = true,
            .geodesic = true,
            .length_space = true,
            .nonneg_curvature = true,
            .complete = true};
  }

  Point canonicalize(const Point& x) const override {
    require_size(x, 1, id());
    if (!(x[0] >= 0.0)) throw InvalidArgument("ray point must be >= 0, got " + x.to_string());
    return x;
  }

  ExtReal dist(const Point& x, const Point& y) const override {
    return ExtReal(coord_gap(x[0], y[0]));
  }
  ExtReal dist_to_A(const Point& x) const override { return ExtReal(x[0]); }
  bool in_A(const Point& x) const override { return x[0] == 0.0; }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    if (std::isinf(x[0])) return std::nullopt;
    return Projection{Point({0.0}), ExtReal(x[0])};
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    check_t(t);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    if (dist(x, y).is_infinite()) {
      throw InvalidArgument("no geodesic between points at infinite distance");
    }
    return Point({lerp(x[0], y[0], t)});
  }

  std::optional<Point> approach_point(double c) const override { return Point({c}); }
  std::optional<Point> base_point() const override { return Point({0.0}); }
};

// Wedge of circles C_n of radius n glued at angle 2*pi, with the two-case
// arc-length formula. Points are (n, theta) with theta in (0, 2*pi]; theta
// = 2*pi is the wedge point, canonically (1, 2*pi).
class WedgeCircles final : public MetricPair {
 public:
  std::string id() const override { return "wedge_circles"; }

  Capabilities capabilities() const override {
    return {.distance_minimizing = true,
            .geodesic = true,
            .length_space = true,
            .nonneg_curvature = false,
            .complete = true};
  }

  PointFormat point_format() const override { return PointFormat::kArcAngle; }

  Point canonicalize(const Point& x) const override {
    require_size(x, 2, id());
    if (!is_integer(x[0]) || x[0] < 1.0) {
      throw InvalidArgument("wedge_circles arc index must be a positive integer, got " +
                            x.to_string());
    }
    if (!(x[1] > 0.0 && x[1] <= kTwoPi)) {
      throw InvalidArgument("wedge_circles angle must lie in (0, 2*pi], got " + x.to_string());
    }
    if (x[1] == kTwoPi) return base();
    return x;
  }

  ExtReal dist(const Point& x, const Point& y) const override {
    // The base point lies on every circle; route it through to_base so that
    // d(x, x0) and d(x, A) agree to the last bit.
    if (in_A(x)) return ExtReal(to_base(y));
    if (in_A(y)) return ExtReal(to_base(x));
    if (x[0] == y[0]) {
      const double n = x[0];
      const double gap = std::abs(x[1] - y[1]);
      return ExtReal(std::min(n * gap, n * (kTwoPi - gap)));
    }
    return ExtReal(to_base(x) + to_base(y));
  }

  ExtReal dist_to_A(const Point& x) const override { return ExtReal(to_base(x)); }
  bool in_A(const Point& x) const override { return x[1] == kTwoPi; }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    return Projection{base(), dist(x, base())};
  }

  // Travels along the shorter arc. The path may cross the arc between angle
  // 0 and pi/n^3 that the pictured space removes; such angles are accepted
  // by canonicalize() and the distance formula covers them.
  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    check_t(t);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    if (x[0] == y[0]) {
      const double n = x[0];
      double delta = y[1] - x[1];
      if (std::abs(delta) > std::numbers::pi) delta -= std::copysign(kTwoPi, delta);
      return on_arc(n, x[1] + t * delta);
    }
    const double leg_x = to_base(x);
    const double travelled = t * (leg_x + to_base(y));
    if (travelled <= leg_x) return toward_base(x, travelled);
    return toward_base(y, travelled - leg_x, /*from_base=*/true);
  }

  std::optional<Point> approach_point(double c) const override {
    return Point({1.0, kTwoPi - std::min(c, std::numbers::pi)});
  }

  std::optional<Point> base_point() const override { return base(); }

 private:
  static Point base() { return Point({1.0, kTwoPi}); }

  static double to_base(const Point& x) {
    const double n = x[0];
    return std::min(n * x[1], n * (kTwoPi - x[1]));
  }

  static Point on_arc(double n, double theta) {
    if (theta <= 0.0) theta += kTwoPi;
    if (theta > kTwoPi) theta -= kTwoPi;
    if (theta == kTwoPi || theta <= 0.0) return base();
    return Point({n, theta});
  }

  // The point at arc length s from x toward the wedge point, or, with
  // from_base, at arc length s from the wedge point toward x.
  static Point toward_base(const Point& x, double s, bool from_base = false) {
    const double n = x[0];
    const bool via_zero = x[1] <= std::numbers::pi;  // shorter side passes angle 0
    if (!from_base) return on_arc(n, via_zero ? x[1] - s / n : x[1] + s / n);
    return on_arc(n, via_zero ? s / n : kTwoPi - s / n);
  }
};

// Wedge of intervals [0, 1 + 1/k] glued at 0 with A = {1 + 1/k}. Points are
// (k, s); s = 0 is the wedge point, canonically (1, 0). d(wedge, A) = 1 is
// not attained.
class WedgeIntervals final : public MetricPair {
 public:
  std::string id() const override { return "wedge_intervals"; }

  Capabilities capabilities() const override {
    return {.distance_minimizing = false,
            .geodesic = true,
            .length_space = true,
            .nonneg_curvature = false,
            .complete = true};
  }

  PointFormat point_format() const override { return PointFormat::kArcAngle; }

  Point canonicalize(const Point& x) const override {
    require_size(x, 2, id());
    if (!is_integer(x[0]) || x[0] < 1.0) {
      throw InvalidArgument("wedge_intervals arc index must be a positive integer, got " +
                            x.to_string());
    }
    if (!(x[1] >= 0.0 && x[1] <= end_of(x[0]))) {
      throw InvalidArgument("wedge_intervals position must lie in [0, 1 + 1/k], got " +
                            x.to_string());
    }
    if (x[1] == 0.0) return Point({1.0, 0.0});
    return x;
  }

  ExtReal dist(const Point& x, const Point& y) const override {
    if (x[0] == y[0] || x[1] == 0.0 || y[1] == 0.0) return ExtReal(std::abs(x[1] - y[1]));
    return ExtReal(x[1] + y[1]);
  }

  // Own endpoint at 1 + 1/k - s, or the infimum 1 + s over the other arcs.
  ExtReal dist_to_A(const Point& x) const override {
    return ExtReal(std::min(end_of(x[0]) - x[1], 1.0 + x[1]));
  }

  bool in_A(const Point& x) const override { return x[1] == end_of(x[0]); }

  std::optional<Projection> nearest_in_A(const Point& x) const override {
    const double own = end_of(x[0]) - x[1];
    if (own > 1.0 + x[1]) return std::nullopt;
    return Projection{Point({x[0], end_of(x[0])}), ExtReal(own)};
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    check_t(t);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    if (x[0] == y[0] || x[1] == 0.0 || y[1] == 0.0) {
      const double arc = x[1] == 0.0 ? y[0] : x[0];
      return canonicalize(Point({arc, lerp(x[1], y[1], t)}));
    }
    const double travelled = t * (x[1] + y[1]);
    if (travelled <= x[1]) return canonicalize(Point({x[0], x[1] - travelled}));
    return canonicalize(Point({y[0], travelled - x[1]}));
  }

  std::optional<Point> approach_point(double c) const override {
    return Point({1.0, 2.0 - std::min(c, 1.0)});
  }

  static double end_of(double k) { return 1.0 + 1.0 / k; }
};

}  // namespace

bool is_builtin_name(std::string_view name) {
  return name == "halfplane" || name == "pointed_euclidean" || name == "ray" ||
         name == "wedge_circles" || name == "wedge_intervals";
}

SpaceHandle make_builtin_space(std::string_view name, std::optional<std::string_view> params) {
  auto no_params = [&] {
    if (params.has_value()) {
      throw InvalidArgument("space '" + std::string(name) + "' takes no parameters");
    }
  };
  if (name == "halfplane") {
    const std::string_view q = params.value_or("");
    if (q == "l1" || q == "1") return std::make_shared<HalfPlane>(HalfPlane::Ground::kL1);
    if (q == "l2" || q == "2") return std::make_shared<HalfPlane>(HalfPlane::Ground::kL2);
    if (q == "linf" || q == "inf") return std::make_shared<HalfPlane>(HalfPlane::Ground::kLinf);
    throw InvalidArgument("halfplane ground metric must be one of l1, l2, linf; got '" +
                          std::string(q) + "'");
  }
  if (name == "pointed_euclidean") {
    if (!params.has_value()) {
      throw InvalidArgument("pointed_euclidean needs a dimension, e.g. pointed_euclidean:2");
    }
    std::string_view rest = *params;
    const auto colon = rest.find(':');
    const std::string_view dim_text = rest.substr(0, colon);
    const double dim = parse_double(dim_text, "dimension");
    if (!is_integer(dim) || dim <= 0 || dim > 4096) {
      throw InvalidArgument("pointed_euclidean dimension must be a positive integer, got '" +
                            std::string(dim_text) + "'");
    }
    std::vector<double> base(static_cast<std::size_t>(dim), 0.0);
    if (colon != std::string_view::npos) {
      std::string_view coords = rest.substr(colon + 1);
      std::size_t i = 0;
      while (true) {
        const auto comma = coords.find(',');
        if (i >= base.size()) throw InvalidArgument("too many base point coordinates");
        base[i++] = parse_double(coords.substr(0, comma), "base point coordinate");
        if (comma == std::string_view::npos) break;
        coords.remove_prefix(comma + 1);
      }
      if (i != base.size()) throw InvalidArgument("too few base point coordinates");
    }
    return std::make_shared<PointedEuclidean>(std::move(base));
  }
  if (name == "ray") {
    no_params();
    return std::make_shared<Ray>();
  }
  if (name == "wedge_circles") {
    no_params();
    return std::make_shared<WedgeCircles>();
  }
  if (name == "wedge_intervals") {
    no_params();
    return std::make_shared<WedgeIntervals>();
  }
  return nullptr;
}

}  // namespace pdspace::internal
