// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace trapflow {

/// Min-cost flow with node supplies and arc lower bounds, solved by
/// successive shortest paths. Small dense instances only.
class MinCostFlow {
public:
  static constexpr long kInfinite = std::numeric_limits<int>::max() / 4;

  explicit MinCostFlow(std::size_t nodeCount);

  /// Returns the arc id.
  std::size_t addArc(std::size_t from, std::size_t to, long lower, long capacity, long cost);
  /// Positive supply produces flow, negative consumes it.
  void addSupply(std::size_t node, long amount);

  /// False when the supplies cannot be routed.
  bool solve();

  [[nodiscard]] long flow(std::size_t arc) const;
  [[nodiscard]] long totalCost() const { return cost_; }

private:
  struct Residual {
    std::size_t to;
    long capacity;
    long cost;
    std::size_t reverse;
  };

  std::size_t addResidual(std::size_t from, std::size_t to, long capacity, long cost);

  std::size_t nodeCount_;
  std::vector<std::vector<Residual>> adj_;
  std::vector<long> supply_;
  // per arc: tail node, position in adj_, lower bound
  std::vector<std::size_t> arcTail_;
  std::vector<std::size_t> arcSlot_;
  std::vector<long> arcLower_;
  std::vector<long> arcCapacity_;
  long cost_ = 0;
};

} // namespace trapflow
