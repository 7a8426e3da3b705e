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

// Exact solvers for the linear assignment problem and the balanced
// transportation problem, in sum and bottleneck forms. Cells equal to +inf
// are forbidden.

#ifndef PDSPACE_ASSIGNMENT_H_
#define PDSPACE_ASSIGNMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pdspace::assign {

class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// An assignment of a square problem: row i goes to column result[i].
using Assignment = std::vector<std::size_t>;

// Perfect matching that uses only finite cells <= threshold (Hopcroft-Karp).
std::optional<Assignment> perfect_matching_below(const CostMatrix& cost, double threshold);

// Minimum-sum assignment, O(n^3). Empty when the finite cells admit no
// perfect matching.
std::optional<Assignment> min_cost_assignment(const CostMatrix& cost);

// Assignment minimizing the largest used cell: binary search over the
// sorted distinct finite cells with a Hopcroft-Karp feasibility test.
std::optional<Assignment> bottleneck_assignment(const CostMatrix& cost);

// Some assignment using as few +inf cells as possible. Always succeeds.
Assignment fewest_infinite_assignment(const CostMatrix& cost);

double assignment_sum(const CostMatrix& cost, const Assignment& a);

struct TransportProblem {
  std::vector<std::int64_t> supply;  // one per row
  std::vector<std::int64_t> demand;  // one per column; same total as supply
  CostMatrix cost;
};

struct Flow {
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t amount = 0;
};

// Minimum-cost transport plan by successive shortest paths. The number of
// augmentations depends on the number of rows and columns, not on the
// supplies, so large multiplicities are cheap.
std::optional<std::vector<Flow>> min_cost_transport(const TransportProblem& problem);

// Plan minimizing the largest cell carrying flow (max-flow feasibility over
// a binary search of thresholds).
std::optional<std::vector<Flow>> bottleneck_transport(const TransportProblem& problem);

// Some plan using as little flow on +inf cells as possible.
std::vector<Flow> fewest_infinite_transport(const TransportProblem& problem);

}  // namespace pdspace::assign

#endif  // PDSPACE_ASSIGNMENT_H_
