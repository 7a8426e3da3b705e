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

#include "pdspace/ext_real.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "pdspace/errors.h"

namespace pdspace {

ExtReal::ExtReal(double v) : v_(v) {
  if (std::isnan(v) || v < 0.0) {
    throw InvalidArgument("ExtReal must be a non-negative number or +inf, got " +
                          std::to_string(v));
  }
  if (v == 0.0) v_ = 0.0;  // drop the sign of -0.0
}

ExtReal operator+(ExtReal a, ExtReal b) {
  if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
  ExtReal r;
  r.v_ = a.v_ + b.v_;
  return r;
}

std::string ExtReal::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v_);
  return std::string(buf, res.ptr);
}

ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }
ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }

PNorm PNorm::finite(double p) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    throw InvalidArgument("p must lie in [1, inf), got " + std::to_string(p));
  }
  return PNorm(p);
}

PNorm PNorm::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "∞") {
    return infinity();
  }
  double p = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), p);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse p from '" + std::string(text) + "'");
  }
  if (std::isinf(p) && p > 0) return infinity();
  return finite(p);
}

std::string PNorm::to_string() const {
  if (is_infinite()) return "inf";
  return ExtReal(p_).to_string();
}

ExtReal pnorm(std::span<const WeightedValue> values, PNorm p) {
  double largest = 0.0;
  for (const auto& [v, mult] : values) {
    if (mult == 0) continue;
    if (v.is_infinite()) return ExtReal::infinity();
    largest = std::max(largest, v.value());
  }
  if (p.is_infinite() || largest == 0.0) return ExtReal(largest);

  const double e = p.exponent();
  if (e == 1.0) {
    double sum = 0.0;
    for (const auto& [v, mult] : values) {
      if (mult > 0) sum += static_cast<double>(mult) * v.value();
    }
    return ExtReal(sum);
  }
  // Scale by the largest entry so that v^p neither overflows nor underflows
  // wholesale.
  double sum = 0.0;
  for (const auto& [v, mult] : values) {
    if (mult == 0) continue;
    const double r = v.value() / largest;
    sum += static_cast<double>(mult) * (e == 2.0 ? r * r : std::pow(r, e));
  }
  const double root = e == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / e);
  return ExtReal(largest * root);
}

ExtReal pnorm(std::span<const ExtReal> values, PNorm p) {
  std::vector<WeightedValue> weighted;
  weighted.reserve(values.size());
  for (ExtReal v : values) weighted.push_back({v, 1});
  return pnorm(std::span<const WeightedValue>(weighted), p);
}

ExtReal pnorm(ExtReal a, ExtReal b, PNorm p) {
  const WeightedValue pair[2] = {{a, 1}, {b, 1}};
  return pnorm(std::span<const WeightedValue>(pair), p);
}

}  // namespace pdspace
