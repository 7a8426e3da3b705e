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

#ifndef PDSPACE_MATCHING_H_
#define PDSPACE_MATCHING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pdspace/diagram.h"
#include "pdspace/ext_real.h"
#include "pdspace/metric_pair.h"

namespace pdspace {

// One pair of a matching, repeated `mult` times. A side is either a point
// (off A, or a concrete member of A) or nullopt for the class A, whose cost
// is the infimum d(x, A).
struct MatchedPair {
  PointOrA a;
  PointOrA b;
  std::uint64_t mult = 1;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// A matching in normal form: no pair has both sides in A. The marginals are
// the off-A parts of each side.
class Matching {
 public:
  // Canonicalizes the points, merges repeated pairs and sorts. Throws
  // InvalidArgument for pairs with both sides in A or zero multiplicity.
  Matching(SpaceHandle space, std::vector<MatchedPair> pairs);

  const SpaceHandle& space() const { return space_; }
  std::span<const MatchedPair> pairs() const { return pairs_; }
  const Diagram& first_marginal() const { return first_; }
  const Diagram& second_marginal() const { return second_; }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.space_->id() == b.space_->id() && a.pairs_ == b.pairs_;
  }

 private:
  SpaceHandle space_;
  std::vector<MatchedPair> pairs_;
  Diagram first_;
  Diagram second_;
};

// Throws InvalidArgument unless sigma is a matching of alpha and beta.
void validate_matching(const Matching& sigma, const Diagram& alpha, const Diagram& beta);

ExtReal pair_distance(const MetricPair& space, const MatchedPair& pair);

// ||(d(x_i, y_i))_i||_p over the pairs, with multiplicity.
ExtReal cost_p(const Matching& sigma, PNorm p);

struct WassersteinResult {
  ExtReal value;
  std::optional<Matching> matching;
  ExtReal error_bound;
  // The value is attained by `matching`. False on spaces where A is not
  // distance minimizing: the value is then the infimum and the matching
  // pairs points with the class A.
  bool optimal = true;
};

enum class SolverRoute {
  kAuto,        // assignment unless multiplicities dominate
  kAssignment,  // expanded (|a|+|b|) x (|a|+|b|) assignment
  kTransport,   // multiplicity-aware transport on distinct points
};

// Finite p above this is rejected: d^p loses all precision.
inline constexpr double kMaxFiniteP = 64.0;

// W_p(alpha, beta) with an optimal matching. Exact for p < inf via
// min-cost assignment on d^p, and for p = inf via bottleneck assignment.
// An infinite value comes with a witness matching of infinite cost.
WassersteinResult wasserstein(const Diagram& alpha, const Diagram& beta, PNorm p,
                              SolverRoute route = SolverRoute::kAuto);

inline constexpr std::size_t kDefaultBruteForceCap = 10;

// Exhaustive minimum over all permutations of the augmented instance.
// Throws InvalidArgument when |alpha| + |beta| exceeds cap.
WassersteinResult wasserstein_bruteforce(const Diagram& alpha, const Diagram& beta, PNorm p,
                                         std::size_t cap = kDefaultBruteForceCap);

// Distinct optimal matchings (cost within 1e-12 of the optimum), at most
// max_count, found by exhaustive search under the same cap.
std::vector<Matching> optimal_matchings(const Diagram& alpha, const Diagram& beta, PNorm p,
                                        std::size_t max_count,
                                        std::size_t cap = kDefaultBruteForceCap);

// W_p of the heads, bracketed by error_bound = sum of the tail bounds. Tails
// certified for an exponent q <= p are accepted since W_p <= W_q.
WassersteinResult wasserstein_truncated(const TruncatedDiagram& alpha, const TruncatedDiagram& beta,
                                        PNorm p);

// Lower bound on W_p(alpha, beta) for |beta| < |alpha|: the persistence norm
// of the |alpha| - |beta| entries of alpha closest to A.
ExtReal card_mismatch_lower_bound(const Diagram& alpha, const Diagram& beta, PNorm p);

// In wedge_intervals, the cost of matching the wedge point to a_k for
// k = 1..K, i.e. 1 + 1/k; the infimum 1 is never attained.
std::vector<std::pair<int, double>> infimum_gap_demo(int k_max);

}  // namespace pdspace

#endif  // PDSPACE_MATCHING_H_
