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

#ifndef PDSPACE_EXT_REAL_H_
#define PDSPACE_EXT_REAL_H_

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace pdspace {

// A value in [0, +inf]. Infinity absorbs addition and stays infinite
// under powers.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  // Throws InvalidArgument for negative or NaN input. +inf is accepted.
  explicit ExtReal(double v);

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_infinite() const { return v_ == std::numeric_limits<double>::infinity(); }
  bool is_finite() const { return !is_infinite(); }

  // The finite value, or IEEE +inf when infinite.
  double value() const { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b);
  friend bool operator==(ExtReal a, ExtReal b) = default;
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

  std::string to_string() const;

 private:
  double v_ = 0.0;
};

ExtReal min(ExtReal a, ExtReal b);
ExtReal max(ExtReal a, ExtReal b);

// The exponent p of an l_p norm, p in [1, inf].
class PNorm {
 public:
  // Throws InvalidArgument unless 1 <= p < inf.
  static PNorm finite(double p);
  static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
  // Accepts a decimal number or "inf".
  static PNorm parse(std::string_view text);

  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  double exponent() const { return p_; }
  std::string to_string() const;

  friend bool operator==(PNorm a, PNorm b) = default;
  // Orders by exponent, inf last.
  friend std::partial_ordering operator<=>(PNorm a, PNorm b) { return a.p_ <=> b.p_; }

 private:
  explicit PNorm(double p) : p_(p) {}
  double p_;
};

struct WeightedValue {
  ExtReal value;
  std::uint64_t mult = 1;
};

// ||(v_i)||_p where entry i is repeated mult_i times. Infinite iff some
// entry with positive multiplicity is infinite.
ExtReal pnorm(std::span<const WeightedValue> values, PNorm p);
ExtReal pnorm(std::span<const ExtReal> values, PNorm p);
ExtReal pnorm(ExtReal a, ExtReal b, PNorm p);

}  // namespace pdspace

#endif  // PDSPACE_EXT_REAL_H_
