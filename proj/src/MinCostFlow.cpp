// SPDX-License-Identifier: Apache-2.0

#include "trapflow/MinCostFlow.hpp"

#include <deque>
#include <stdexcept>

namespace trapflow {

MinCostFlow::MinCostFlow(std::size_t nodeCount)
    : nodeCount_(nodeCount), adj_(nodeCount + 2), supply_(nodeCount, 0) {}

std::size_t MinCostFlow::addResidual(std::size_t from, std::size_t to, long capacity,
                                     long cost) {
  const auto slot = adj_[from].size();
  const auto back = adj_[to].size() + (from == to ? 1 : 0);
  adj_[from].push_back({to, capacity, cost, back});
  adj_[to].push_back({from, 0, -cost, slot});
  return slot;
}

std::size_t MinCostFlow::addArc(std::size_t from, std::size_t to, long lower, long capacity,
                                long cost) {
  if (from >= nodeCount_ || to >= nodeCount_ || lower < 0 || capacity < lower) {
    throw std::invalid_argument("bad flow arc");
  }
  arcTail_.push_back(from);
  arcSlot_.push_back(addResidual(from, to, capacity - lower, cost));
  arcLower_.push_back(lower);
  arcCapacity_.push_back(capacity);
  supply_[from] -= lower;
  supply_[to] += lower;
  cost_ += lower * cost;
  return arcTail_.size() - 1;
}

void MinCostFlow::addSupply(std::size_t node, long amount) { supply_.at(node) += amount; }

bool MinCostFlow::solve() {
  const auto source = nodeCount_;
  const auto sink = nodeCount_ + 1;
  long required = 0;
  long balance = 0;
  for (const auto s : supply_) {
    balance += s;
  }
  if (balance != 0) {
    return false;
  }
  for (std::size_t v = 0; v < nodeCount_; ++v) {
    if (supply_[v] > 0) {
      addResidual(source, v, supply_[v], 0);
      required += supply_[v];
    } else if (supply_[v] < 0) {
      addResidual(v, sink, -supply_[v], 0);
    }
  }
  const auto n = adj_.size();
  constexpr long kUnreached = std::numeric_limits<long>::max();
  while (required > 0) {
    // Bellman-Ford queue variant; residual costs may be negative.
    std::vector<long> dist(n, kUnreached);
    std::vector<std::size_t> viaNode(n, n);
    std::vector<std::size_t> viaSlot(n, 0);
    std::vector<bool> queued(n, false);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    queued[source] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      queued[u] = false;
      for (std::size_t k = 0; k < adj_[u].size(); ++k) {
        const auto& r = adj_[u][k];
        if (r.capacity > 0 && dist[u] + r.cost < dist[r.to]) {
          dist[r.to] = dist[u] + r.cost;
          viaNode[r.to] = u;
          viaSlot[r.to] = k;
          if (!queued[r.to]) {
            queued[r.to] = true;
            queue.push_back(r.to);
          }
        }
      }
    }
    if (dist[sink] == kUnreached) {
      return false;
    }
    long push = required;
    for (auto v = sink; v != source; v = viaNode[v]) {
      push = std::min(push, adj_[viaNode[v]][viaSlot[v]].capacity);
    }
    for (auto v = sink; v != source; v = viaNode[v]) {
      auto& r = adj_[viaNode[v]][viaSlot[v]];
      r.capacity -= push;
      adj_[v][r.reverse].capacity += push;
    }
    required -= push;
    cost_ += push * dist[sink];
  }
  return true;
}

long MinCostFlow::flow(std::size_t arc) const {
  const auto& r = adj_[arcTail_.at(arc)][arcSlot_[arc]];
  return arcLower_[arc] + (arcCapacity_[arc] - arcLower_[arc] - r.capacity);
}

} // namespace trapflow
