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

#include "pdspace/point.h"

#include <charconv>
#include <cmath>
#include <string>
#include <utility>

namespace pdspace {
namespace {

void drop_negative_zero(std::vector<double>& coords) {
  for (double& c : coords) {
    if (c == 0.0) c = 0.0;
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  drop_negative_zero(coords_);
}

Point::Point(std::initializer_list<double> coords) : coords_(coords) {
  drop_negative_zero(coords_);
}

std::string Point::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ", ";
    if (std::isinf(coords_[i])) {
      out += coords_[i] > 0 ? "inf" : "-inf";
      continue;
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), coords_[i]);
    out.append(buf, res.ptr);
  }
  return out + ")";
}

bool point_or_a_less(const PointOrA& a, const PointOrA& b) {
  if (!a.has_value()) return b.has_value();
  if (!b.has_value()) return false;
  return *a < *b;
}

}  // namespace pdspace
