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

#include "pdspace/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "pdspace/assignment.h"
#include "pdspace/errors.h"

namespace pdspace {
namespace {

using assign::CostMatrix;

bool pair_less(const MatchedPair& x, const MatchedPair& y) {
  if (point_or_a_less(x.a, y.a)) return true;
  if (point_or_a_less(y.a, x.a)) return false;
  return point_or_a_less(x.b, y.b);
}

bool side_in_A(const MetricPair& space, const PointOrA& side) {
  return !side.has_value() || space.in_A(*side);
}

std::vector<Point> expand(const Diagram& d) {
  std::vector<Point> out;
  out.reserve(d.cardinality());
  for (const auto& e : d.entries()) {
    for (std::uint64_t k = 0; k < e.mult; ++k) out.push_back(e.point);
  }
  return out;
}

// The square instance of size |alpha| + |beta|: rows are the points of
// alpha followed by one copy of A per point of beta; columns are the points
// of beta followed by one copy of A per point of alpha. Cells hold plain
// distances; A-to-A cells cost 0.
struct ExpandedInstance {
  std::vector<Point> rows;  // alpha points; A copies are implicit
  std::vector<Point> cols;  // beta points
  CostMatrix dist;
};

ExpandedInstance expanded_instance(const Diagram& alpha, const Diagram& beta) {
  const MetricPair& space = *alpha.space();
  ExpandedInstance inst{expand(alpha), expand(beta), {}};
  const std::size_t m = inst.rows.size();
  const std::size_t n = inst.cols.size();
  inst.dist = CostMatrix(m + n, m + n, 0.0);
  std::vector<double> row_to_a(m), col_to_a(n);
  for (std::size_t i = 0; i < m; ++i) row_to_a[i] = space.dist_to_A(inst.rows[i]).value();
  for (std::size_t j = 0; j < n; ++j) col_to_a[j] = space.dist_to_A(inst.cols[j]).value();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      inst.dist(i, j) = space.dist(inst.rows[i], inst.cols[j]).value();
    for (std::size_t k = 0; k < m; ++k) inst.dist(i, n + k) = row_to_a[i];
  }
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) inst.dist(m + l, j) = col_to_a[j];
  }
  return inst;
}

Matching matching_from_assignment(const SpaceHandle& space, const ExpandedInstance& inst,
                                  const assign::Assignment& a) {
  const std::size_t m = inst.rows.size();
  const std::size_t n = inst.cols.size();
  std::vector<MatchedPair> pairs;
  for (std::size_t i = 0; i < m + n; ++i) {
    const std::size_t j = a[i];
    PointOrA left = i < m ? PointOrA(inst.rows[i]) : std::nullopt;
    PointOrA right = j < n ? PointOrA(inst.cols[j]) : std::nullopt;
    if (!left && !right) continue;
    pairs.push_back({std::move(left), std::move(right), 1});
  }
  return Matching(space, std::move(pairs));
}

// Maps distances to the solver's cost scale: (d / s)^p with s the largest
// finite distance, so sums stay in range for large p.
CostMatrix powered_costs(const CostMatrix& dist, double p) {
  double scale = 0.0;
  for (std::size_t i = 0; i < dist.rows(); ++i) {
    for (std::size_t j = 0; j < dist.cols(); ++j) {
      if (std::isfinite(dist(i, j))) scale = std::max(scale, dist(i, j));
    }
  }
  if (scale == 0.0) scale = 1.0;
  CostMatrix out(dist.rows(), dist.cols());
  for (std::size_t i = 0; i < dist.rows(); ++i) {
    for (std::size_t j = 0; j < dist.cols(); ++j) {
      const double d = dist(i, j);
      if (!std::isfinite(d)) {
        out(i, j) = d;
        continue;
      }
      const double r = d / scale;
      out(i, j) = p == 1.0 ? r : p == 2.0 ? r * r : std::pow(r, p);
    }
  }
  return out;
}

Matching solve_by_assignment(const Diagram& alpha, const Diagram& beta, PNorm p) {
  const ExpandedInstance inst = expanded_instance(alpha, beta);
  std::optional<assign::Assignment> a;
  if (p.is_infinite()) {
    a = assign::bottleneck_assignment(inst.dist);
  } else {
    a = assign::min_cost_assignment(powered_costs(inst.dist, p.exponent()));
  }
  if (!a) a = assign::fewest_infinite_assignment(inst.dist);
  return matching_from_assignment(alpha.space(), inst, *a);
}

std::int64_t to_supply(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw InvalidArgument("multiplicity too large for the transport solver");
  }
  return static_cast<std::int64_t>(v);
}

// Same instance with one row per distinct point of alpha plus an A row of
// supply |beta|, and one column per distinct point of beta plus an A column
// of demand |alpha|.
Matching solve_by_transport(const Diagram& alpha, const Diagram& beta, PNorm p) {
  const MetricPair& space = *alpha.space();
  const auto a_entries = alpha.entries();
  const auto b_entries = beta.entries();
  const std::size_t m = a_entries.size();
  const std::size_t n = b_entries.size();

  assign::TransportProblem problem;
  problem.supply.resize(m + 1);
  problem.demand.resize(n + 1);
  for (std::size_t i = 0; i < m; ++i) problem.supply[i] = to_supply(a_entries[i].mult);
  problem.supply[m] = to_supply(beta.cardinality());
  for (std::size_t j = 0; j < n; ++j) problem.demand[j] = to_supply(b_entries[j].mult);
  problem.demand[n] = to_supply(alpha.cardinality());

  CostMatrix dist(m + 1, n + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist(i, j) = space.dist(a_entries[i].point, b_entries[j].point).value();
    }
    dist(i, n) = space.dist_to_A(a_entries[i].point).value();
  }
  for (std::size_t j = 0; j < n; ++j) dist(m, j) = space.dist_to_A(b_entries[j].point).value();

  std::optional<std::vector<assign::Flow>> flows;
  if (p.is_infinite()) {
    problem.cost = dist;
    flows = assign::bottleneck_transport(problem);
  } else {
    problem.cost = powered_costs(dist, p.exponent());
    flows = assign::min_cost_transport(problem);
  }
  if (!flows) {
    problem.cost = dist;
    flows = assign::fewest_infinite_transport(problem);
  }

  std::vector<MatchedPair> pairs;
  for (const auto& f : *flows) {
    PointOrA left = f.row < m ? PointOrA(a_entries[f.row].point) : std::nullopt;
    PointOrA right = f.col < n ? PointOrA(b_entries[f.col].point) : std::nullopt;
    if (!left && !right) continue;
    pairs.push_back({std::move(left), std::move(right), static_cast<std::uint64_t>(f.amount)});
  }
  return Matching(alpha.space(), std::move(pairs));
}

void check_solver_p(PNorm p) {
  if (!p.is_infinite() && p.exponent() > kMaxFiniteP) {
    throw InvalidArgument("finite p above 64 is not supported; use p = inf for bottleneck");
  }
}

WassersteinResult result_for(const Diagram& alpha, const Diagram& beta, Matching sigma, PNorm p) {
  validate_matching(sigma, alpha, beta);
  WassersteinResult r;
  r.value = cost_p(sigma, p);
  r.optimal = alpha.space()->capabilities().distance_minimizing;
  r.matching = std::move(sigma);
  return r;
}

bool precedes(const Diagram& a, const Diagram& b) {
  return std::lexicographical_compare(
      a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end(),
      [](const DiagramEntry& x, const DiagramEntry& y) {
        return x.point != y.point ? x.point < y.point : x.mult < y.mult;
      });
}

Matching mirrored(const Matching& sigma) {
  std::vector<MatchedPair> pairs;
  for (const auto& pair : sigma.pairs()) pairs.push_back({pair.b, pair.a, pair.mult});
  return Matching(sigma.space(), std::move(pairs));
}

// Visits every permutation of the expanded instance in lexicographic order.
template <typename Visit>
void for_each_permutation(std::size_t size, Visit&& visit) {
  assign::Assignment perm(size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

ExtReal permutation_cost(const CostMatrix& dist, const assign::Assignment& perm, PNorm p) {
  std::vector<ExtReal> cells(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) cells[i] = ExtReal(dist(i, perm[i]));
  return pnorm(std::span<const ExtReal>(cells), p);
}

void check_cap(const Diagram& alpha, const Diagram& beta, std::size_t cap) {
  require_same_space(alpha, beta);
  if (alpha.cardinality() + beta.cardinality() > cap) {
    throw InvalidArgument("exhaustive search is capped at |alpha| + |beta| <= " +
                          std::to_string(cap));
  }
}

}  // namespace

Matching::Matching(SpaceHandle space, std::vector<MatchedPair> pairs)
    : space_(std::move(space)), first_(space_), second_(space_) {
  std::vector<DiagramEntry> first, second;
  for (auto& pair : pairs) {
    if (pair.mult == 0) throw InvalidArgument("zero multiplicity in matching");
    if (pair.a) pair.a = space_->canonicalize(*pair.a);
    if (pair.b) pair.b = space_->canonicalize(*pair.b);
    const bool a_in_A = side_in_A(*space_, pair.a);
    const bool b_in_A = side_in_A(*space_, pair.b);
    if (a_in_A && b_in_A) {
      throw InvalidArgument("matching pairs A with A; such pairs are dropped in normal form");
    }
    if (!a_in_A) first.push_back({*pair.a, pair.mult});
    if (!b_in_A) second.push_back({*pair.b, pair.mult});
  }
  std::sort(pairs.begin(), pairs.end(), pair_less);
  for (auto& pair : pairs) {
    if (!pairs_.empty() && pairs_.back().a == pair.a && pairs_.back().b == pair.b) {
      pairs_.back().mult += pair.mult;
    } else {
      pairs_.push_back(std::move(pair));
    }
  }
  first_ = Diagram(space_, std::move(first));
  second_ = Diagram(space_, std::move(second));
}

void validate_matching(const Matching& sigma, const Diagram& alpha, const Diagram& beta) {
  require_same_space(*sigma.space(), *alpha.space());
  require_same_space(alpha, beta);
  if (!(sigma.first_marginal() == alpha)) {
    throw InvalidArgument("first marginal of the matching differs from alpha");
  }
  if (!(sigma.second_marginal() == beta)) {
    throw InvalidArgument("second marginal of the matching differs from beta");
  }
}

ExtReal pair_distance(const MetricPair& space, const MatchedPair& pair) {
  if (!pair.a && !pair.b) return ExtReal();
  if (!pair.a) return space.dist_to_A(*pair.b);
  if (!pair.b) return space.dist_to_A(*pair.a);
  return space.dist(*pair.a, *pair.b);
}

ExtReal cost_p(const Matching& sigma, PNorm p) {
  std::vector<WeightedValue> values;
  values.reserve(sigma.pairs().size());
  for (const auto& pair : sigma.pairs()) {
    values.push_back({pair_distance(*sigma.space(), pair), pair.mult});
  }
  // Summing in sorted order makes the value independent of how the pairs
  // are oriented, so W_p(alpha, beta) and W_p(beta, alpha) agree bit for bit.
  std::sort(values.begin(), values.end(), [](const WeightedValue& x, const WeightedValue& y) {
    return x.value != y.value ? x.value < y.value : x.mult < y.mult;
  });
  return pnorm(values, p);
}

WassersteinResult wasserstein(const Diagram& alpha, const Diagram& beta, PNorm p,
                              SolverRoute route) {
  require_same_space(alpha, beta);
  check_solver_p(p);
  if (route == SolverRoute::kAuto) {
    const std::uint64_t expanded = alpha.cardinality() + beta.cardinality();
    const std::uint64_t distinct = alpha.entries().size() + beta.entries().size();
    route = expanded <= 400 || expanded <= 2 * distinct ? SolverRoute::kAssignment
                                                        : SolverRoute::kTransport;
  }
  // Solve in a fixed orientation and mirror afterwards.
  const bool swapped = precedes(beta, alpha);
  const Diagram& first = swapped ? beta : alpha;
  const Diagram& second = swapped ? alpha : beta;
  Matching sigma = route == SolverRoute::kAssignment ? solve_by_assignment(first, second, p)
                                                     : solve_by_transport(first, second, p);
  WassersteinResult r = result_for(first, second, std::move(sigma), p);
  if (swapped) r.matching = mirrored(*r.matching);
  return r;
}

WassersteinResult wasserstein_bruteforce(const Diagram& alpha, const Diagram& beta, PNorm p,
                                         std::size_t cap) {
  check_cap(alpha, beta, cap);
  const ExpandedInstance inst = expanded_instance(alpha, beta);
  std::optional<assign::Assignment> best;
  ExtReal best_cost = ExtReal::infinity();
  for_each_permutation(inst.dist.rows(), [&](const assign::Assignment& perm) {
    const ExtReal c = permutation_cost(inst.dist, perm, p);
    if (!best || c < best_cost) {
      best = perm;
      best_cost = c;
    }
  });
  return result_for(alpha, beta, matching_from_assignment(alpha.space(), inst, *best), p);
}

std::vector<Matching> optimal_matchings(const Diagram& alpha, const Diagram& beta, PNorm p,
                                        std::size_t max_count, std::size_t cap) {
  check_cap(alpha, beta, cap);
  const ExpandedInstance inst = expanded_instance(alpha, beta);
  const std::size_t size = inst.dist.rows();
  ExtReal best = ExtReal::infinity();
  for_each_permutation(size, [&](const assign::Assignment& perm) {
    best = min(best, permutation_cost(inst.dist, perm, p));
  });
  const double tol = 1e-12 * std::max(1.0, best.value());
  std::vector<Matching> found;
  if (max_count == 0) return found;
  for_each_permutation(size, [&](const assign::Assignment& perm) {
    if (found.size() >= max_count) return;
    const ExtReal c = permutation_cost(inst.dist, perm, p);
    const bool tie = best.is_infinite() ? c.is_infinite() : c.value() <= best.value() + tol;
    if (!tie) return;
    Matching sigma = matching_from_assignment(alpha.space(), inst, perm);
    if (std::find(found.begin(), found.end(), sigma) == found.end()) {
      found.push_back(std::move(sigma));
    }
  });
  return found;
}

WassersteinResult wasserstein_truncated(const TruncatedDiagram& alpha, const TruncatedDiagram& beta,
                                        PNorm p) {
  for (const TruncatedDiagram* d : {&alpha, &beta}) {
    if (d->tail_bound > ExtReal() && d->tail_exponent > p) {
      throw InvalidArgument("tail bound certified for p = " + d->tail_exponent.to_string() +
                            " does not bound W_" + p.to_string());
    }
  }
  WassersteinResult r = wasserstein(alpha.head, beta.head, p);
  r.error_bound = alpha.tail_bound + beta.tail_bound;
  return r;
}

ExtReal card_mismatch_lower_bound(const Diagram& alpha, const Diagram& beta, PNorm p) {
  require_same_space(alpha, beta);
  const std::uint64_t na = alpha.cardinality();
  const std::uint64_t nb = beta.cardinality();
  if (nb >= na) {
    throw InvalidArgument("card_mismatch_lower_bound needs |beta| < |alpha|");
  }
  std::vector<WeightedValue> by_distance;
  for (const auto& e : alpha.entries()) {
    by_distance.push_back({alpha.space()->dist_to_A(e.point), e.mult});
  }
  std::sort(by_distance.begin(), by_distance.end(),
            [](const WeightedValue& x, const WeightedValue& y) { return x.value < y.value; });
  // The |alpha| - |beta| entries nearest to A.
  std::uint64_t remaining = na - nb;
  std::vector<WeightedValue> tail;
  for (const auto& w : by_distance) {
    if (remaining == 0) break;
    const std::uint64_t take = std::min(remaining, w.mult);
    tail.push_back({w.value, take});
    remaining -= take;
  }
  return pnorm(tail, p);
}

std::vector<std::pair<int, double>> infimum_gap_demo(int k_max) {
  if (k_max < 1) throw InvalidArgument("K must be positive");
  const SpaceHandle space = make_space("wedge_intervals");
  const Point wedge({1.0, 0.0});
  std::vector<std::pair<int, double>> out;
  for (int k = 1; k <= k_max; ++k) {
    const double kk = static_cast<double>(k);
    Matching sigma(space, {{wedge, Point({kk, 1.0 + 1.0 / kk}), 1}});
    out.emplace_back(k, cost_p(sigma, PNorm::finite(1.0)).value());
  }
  return out;
}

}  // namespace pdspace
