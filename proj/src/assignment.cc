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

#include "pdspace/assignment.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

#include "pdspace/errors.h"

namespace pdspace::assign {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_square(const CostMatrix& cost) {
  if (cost.rows() != cost.cols()) throw InvalidArgument("assignment needs a square matrix");
}

void require_balanced(const TransportProblem& p) {
  if (p.supply.size() != p.cost.rows() || p.demand.size() != p.cost.cols()) {
    throw InvalidArgument("transport problem dimensions do not match the cost matrix");
  }
  for (auto s : p.supply) {
    if (s < 0) throw InvalidArgument("negative supply");
  }
  for (auto d : p.demand) {
    if (d < 0) throw InvalidArgument("negative demand");
  }
  const auto total_supply = std::accumulate(p.supply.begin(), p.supply.end(), std::int64_t{0});
  const auto total_demand = std::accumulate(p.demand.begin(), p.demand.end(), std::int64_t{0});
  if (total_supply != total_demand) throw InvalidArgument("unbalanced transport problem");
}

std::vector<double> sorted_finite_cells(const CostMatrix& cost) {
  std::vector<double> cells;
  cells.reserve(cost.rows() * cost.cols());
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (std::isfinite(cost(i, j))) cells.push_back(cost(i, j));
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

// Smallest entry of `thresholds` for which `feasible` holds, assuming
// monotonicity; kNone if even the largest fails.
std::size_t lowest_feasible(const std::vector<double>& thresholds,
                            const std::function<bool(double)>& feasible) {
  if (thresholds.empty() || !feasible(thresholds.back())) return kNone;
  std::size_t lo = 0;
  std::size_t hi = thresholds.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(thresholds[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

// Dinic max-flow on int64 capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back(edges_.size());
    edges_.push_back({to, cap});
    adj_[to].push_back(edges_.size());
    edges_.push_back({from, 0});
    return edges_.size() - 2;
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

  // Flow currently pushed through edge `e` (as returned by add_edge).
  std::int64_t flow(std::size_t e) const { return edges_[e ^ 1].cap; }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t e : adj_[u]) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (; it_[u] < adj_[u].size(); ++it_[u]) {
      const std::size_t e = adj_[u][it_[u]];
      const std::size_t v = edges_[e].to;
      if (edges_[e].cap <= 0 || level_[v] != level_[u] + 1) continue;
      if (std::int64_t f = dfs(v, t, std::min(pushed, edges_[e].cap))) {
        edges_[e].cap -= f;
        edges_[e ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

std::optional<std::vector<Flow>> transport_below(const TransportProblem& p, double threshold) {
  const std::size_t rows = p.cost.rows();
  const std::size_t cols = p.cost.cols();
  const std::size_t source = rows + cols;
  const std::size_t sink = source + 1;
  MaxFlow mf(sink + 1);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    mf.add_edge(source, i, p.supply[i]);
    total += p.supply[i];
  }
  for (std::size_t j = 0; j < cols; ++j) mf.add_edge(rows + j, sink, p.demand[j]);
  struct Cell {
    std::size_t row, col, edge;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = p.cost(i, j);
      if (std::isfinite(c) && c <= threshold) {
        cells.push_back({i, j, mf.add_edge(i, rows + j, total)});
      }
    }
  }
  if (mf.run(source, sink) != total) return std::nullopt;
  std::vector<Flow> flows;
  for (const auto& c : cells) {
    if (const std::int64_t f = mf.flow(c.edge); f > 0) flows.push_back({c.row, c.col, f});
  }
  return flows;
}

}  // namespace

std::optional<Assignment> perfect_matching_below(const CostMatrix& cost, double threshold) {
  require_square(cost);
  const std::size_t n = cost.rows();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isfinite(cost(i, j)) && cost(i, j) <= threshold) adj[i].push_back(j);
    }
  }

  std::vector<std::size_t> match_row(n, kNone), match_col(n, kNone);
  std::vector<std::size_t> dist(n);
  const std::size_t unreached = std::numeric_limits<std::size_t>::max();

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (match_row[i] == kNone) {
        dist[i] = 0;
        q.push(i);
      } else {
        dist[i] = unreached;
      }
    }
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      for (std::size_t j : adj[i]) {
        const std::size_t k = match_col[j];
        if (k == kNone) {
          found = true;
        } else if (dist[k] == unreached) {
          dist[k] = dist[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      const std::size_t k = match_col[j];
      if (k == kNone || (dist[k] == dist[i] + 1 && dfs(k))) {
        match_row[i] = j;
        match_col[j] = i;
        return true;
      }
    }
    dist[i] = unreached;
    return false;
  };

  std::size_t matched = 0;
  while (bfs()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (match_row[i] == kNone && dfs(i)) ++matched;
    }
  }
  if (matched != n) return std::nullopt;
  return match_row;
}

std::optional<Assignment> min_cost_assignment(const CostMatrix& cost) {
  require_square(cost);
  const std::size_t n = cost.rows();
  if (n == 0) return Assignment{};
  // With a finite perfect matching present, every phase below finds a finite
  // augmenting path, so forbidden (+inf) cells are never used.
  if (!perfect_matching_below(cost, kInf)) return std::nullopt;

  // Shortest augmenting paths with row/column potentials; index 0 is a
  // virtual column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) throw Error("assignment solver lost its augmenting path");
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment result(n);
  for (std::size_t j = 1; j <= n; ++j) result[owner[j] - 1] = j - 1;
  return result;
}

std::optional<Assignment> bottleneck_assignment(const CostMatrix& cost) {
  require_square(cost);
  if (cost.rows() == 0) return Assignment{};
  const std::vector<double> thresholds = sorted_finite_cells(cost);
  const std::size_t k = lowest_feasible(
      thresholds, [&](double t) { return perfect_matching_below(cost, t).has_value(); });
  if (k == kNone) return std::nullopt;
  return perfect_matching_below(cost, thresholds[k]);
}

Assignment fewest_infinite_assignment(const CostMatrix& cost) {
  require_square(cost);
  CostMatrix indicator(cost.rows(), cost.cols());
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      indicator(i, j) = std::isfinite(cost(i, j)) ? 0.0 : 1.0;
    }
  }
  return *min_cost_assignment(indicator);
}

double assignment_sum(const CostMatrix& cost, const Assignment& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += cost(i, a[i]);
  return sum;
}

std::optional<std::vector<Flow>> min_cost_transport(const TransportProblem& p) {
  require_balanced(p);
  const std::size_t rows = p.cost.rows();
  const std::size_t cols = p.cost.cols();
  const std::size_t source = rows + cols;
  const std::size_t sink = source + 1;
  const std::size_t nodes = sink + 1;

  struct Edge {
    std::size_t to;
    std::int64_t cap;
    double cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(nodes);
  auto add_edge = [&](std::size_t a, std::size_t b, std::int64_t cap, double c) {
    adj[a].push_back(edges.size());
    edges.push_back({b, cap, c});
    adj[b].push_back(edges.size());
    edges.push_back({a, 0, -c});
    return edges.size() - 2;
  };

  std::int64_t total = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (p.supply[i] > 0) add_edge(source, i, p.supply[i], 0.0);
    total += p.supply[i];
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (p.demand[j] > 0) add_edge(rows + j, sink, p.demand[j], 0.0);
  }
  struct Cell {
    std::size_t row, col, edge;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = p.cost(i, j);
      if (!std::isfinite(c)) continue;
      if (c < 0.0) throw InvalidArgument("transport costs must be non-negative");
      cells.push_back({i, j, add_edge(i, rows + j, total, c)});
    }
  }

  // Dijkstra on reduced costs; costs start non-negative so zero potentials
  // are valid. Reduced costs are clamped at zero against rounding.
  std::vector<double> potential(nodes, 0.0), dist(nodes);
  std::vector<std::size_t> parent_edge(nodes);
  std::int64_t pushed = 0;
  while (pushed < total) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent_edge.begin(), parent_edge.end(), kNone);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (std::size_t e : adj[u]) {
        const Edge& edge = edges[e];
        if (edge.cap <= 0) continue;
        const double reduced = std::max(0.0, edge.cost + potential[u] - potential[edge.to]);
        if (dist[u] + reduced < dist[edge.to]) {
          dist[edge.to] = dist[u] + reduced;
          parent_edge[edge.to] = e;
          heap.push({dist[edge.to], edge.to});
        }
      }
    }
    if (dist[sink] == kInf) return std::nullopt;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    std::int64_t amount = total - pushed;
    for (std::size_t v = sink; v != source; v = edges[parent_edge[v] ^ 1].to) {
      amount = std::min(amount, edges[parent_edge[v]].cap);
    }
    for (std::size_t v = sink; v != source; v = edges[parent_edge[v] ^ 1].to) {
      edges[parent_edge[v]].cap -= amount;
      edges[parent_edge[v] ^ 1].cap += amount;
    }
    pushed += amount;
  }

  std::vector<Flow> flows;
  for (const auto& c : cells) {
    if (const std::int64_t f = edges[c.edge ^ 1].cap; f > 0) flows.push_back({c.row, c.col, f});
  }
  return flows;
}

std::optional<std::vector<Flow>> bottleneck_transport(const TransportProblem& p) {
  require_balanced(p);
  const std::vector<double> thresholds = sorted_finite_cells(p.cost);
  if (std::all_of(p.supply.begin(), p.supply.end(), [](auto s) { return s == 0; })) {
    return std::vector<Flow>{};
  }
  const std::size_t k =
      lowest_feasible(thresholds, [&](double t) { return transport_below(p, t).has_value(); });
  if (k == kNone) return std::nullopt;
  return transport_below(p, thresholds[k]);
}

std::vector<Flow> fewest_infinite_transport(const TransportProblem& p) {
  TransportProblem indicator{p.supply, p.demand, CostMatrix(p.cost.rows(), p.cost.cols())};
  for (std::size_t i = 0; i < p.cost.rows(); ++i) {
    for (std::size_t j = 0; j < p.cost.cols(); ++j) {
      indicator.cost(i, j) = std::isfinite(p.cost(i, j)) ? 0.0 : 1.0;
    }
  }
  return *min_cost_transport(indicator);
}

}  // namespace pdspace::assign
