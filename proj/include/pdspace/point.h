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

#ifndef PDSPACE_POINT_H_
#define PDSPACE_POINT_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pdspace {

// Coordinate payload of a point. The meaning of the coordinates belongs to
// the space that validated the point: (birth, death) in the half-plane, a
// vector in pointed Euclidean space, (arc, angle) in the wedge spaces.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  // Lexicographic; -0.0 is normalized away at construction so equality is
  // also bitwise equality of the payload.
  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Point& a, const Point& b) { return a.coords_ < b.coords_; }

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

// A side of a matched pair: either a concrete point (possibly a member of A)
// or the collapsed class A itself.
using PointOrA = std::optional<Point>;

// Orders the collapsed class first, then points lexicographically.
bool point_or_a_less(const PointOrA& a, const PointOrA& b);

}  // namespace pdspace

#endif  // PDSPACE_POINT_H_
