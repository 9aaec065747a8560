// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Ortho.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace trapflow::test {

/// Exhaustive minimum bend count for the fixed embedding and outer faces:
/// every angle assignment at every vertex, then an optimal assignment of
/// surplus face units to deficits by dual distance.
class BendOracle {
public:
  BendOracle(const PlanarizedGraph& pg, std::vector<std::size_t> outer)
      : pg_(pg), faceSum_(pg.faceCount, 0), demand_(pg.faceCount, 0) {
    std::vector<long> size(pg.faceCount, 0);
    for (std::size_t d = 0; d < pg.dartCount(); ++d) {
      ++size[pg.faceOfDart[d]];
    }
    for (std::size_t f = 0; f < pg.faceCount; ++f) {
      const bool isOuter = std::find(outer.begin(), outer.end(), f) != outer.end();
      demand_[f] = isOuter ? 2 * size[f] + 4 : 2 * size[f] - 4;
    }
    corners_.resize(pg.vertexCount());
    for (std::size_t d = 0; d < pg.dartCount(); ++d) {
      corners_[pg.head(d)].push_back(pg.faceOfDart[d]);
    }
    dist_.assign(pg.faceCount, std::vector<long>(pg.faceCount, kFar));
    for (std::size_t f = 0; f < pg.faceCount; ++f) {
      std::deque<std::size_t> queue{f};
      dist_[f][f] = 0;
      while (!queue.empty()) {
        const auto g = queue.front();
        queue.pop_front();
        for (std::size_t d = 0; d < pg.dartCount(); ++d) {
          if (pg.faceOfDart[d] != g) {
            continue;
          }
          const auto h = pg.faceOfDart[d ^ 1U];
          if (dist_[f][h] == kFar) {
            dist_[f][h] = dist_[f][g] + 1;
            queue.push_back(h);
          }
        }
      }
    }
  }

  long minimumBends() {
    best_ = kFar;
    search(0);
    return best_;
  }

private:
  static constexpr long kFar = std::numeric_limits<long>::max() / 4;

  void search(std::size_t v) {
    if (v == corners_.size()) {
      best_ = std::min(best_, transport());
      return;
    }
    const auto& c = corners_[v];
    if (c.empty()) {
      search(v + 1);
      return;
    }
    std::vector<int> parts(c.size(), 1);
    assign(v, parts, 0, 4 - static_cast<int>(c.size()));
  }

  void assign(std::size_t v, std::vector<int>& parts, std::size_t k, int left) {
    const auto& c = corners_[v];
    if (k + 1 == c.size()) {
      parts[k] = 1 + left;
      for (std::size_t i = 0; i < c.size(); ++i) {
        faceSum_[c[i]] += parts[i];
      }
      search(v + 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        faceSum_[c[i]] -= parts[i];
      }
      return;
    }
    for (int extra = 0; extra <= left; ++extra) {
      parts[k] = 1 + extra;
      assign(v, parts, k + 1, left - extra);
    }
  }

  long transport() const {
    std::vector<std::size_t> senders;
    std::vector<std::size_t> receivers;
    for (std::size_t f = 0; f < faceSum_.size(); ++f) {
      const long excess = demand_[f] - faceSum_[f];
      for (long u = 0; u < -excess; ++u) {
        senders.push_back(f);
      }
      for (long u = 0; u < excess; ++u) {
        receivers.push_back(f);
      }
    }
    if (senders.size() != receivers.size()) {
      throw std::logic_error("unbalanced face demands");
    }
    const auto m = senders.size();
    if (m > 18) {
      throw std::runtime_error("oracle instance too large");
    }
    std::vector<long> dp(std::size_t{1} << m, kFar);
    dp[0] = 0;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] >= kFar) {
        continue;
      }
      const auto i = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (i == m) {
        continue;
      }
      for (std::size_t j = 0; j < m; ++j) {
        if ((mask >> j) & 1U) {
          continue;
        }
        const auto cost = dist_[senders[i]][receivers[j]];
        if (cost >= kFar) {
          continue;
        }
        auto& slot = dp[mask | (std::size_t{1} << j)];
        slot = std::min(slot, dp[mask] + cost);
      }
    }
    return dp.back();
  }

  const PlanarizedGraph& pg_;
  std::vector<long> faceSum_;
  std::vector<long> demand_;
  std::vector<std::vector<std::size_t>> corners_;
  std::vector<std::vector<long>> dist_;
  long best_ = 0;
};

/// Random multigraph with maximum degree 4 and no self loops.
template <class Rng>
SimpleGraph randomDegreeFourGraph(Rng& rng, std::size_t maxVertices, std::size_t maxEdges) {
  std::uniform_int_distribution<std::size_t> vcount(1, maxVertices);
  SimpleGraph g;
  g.vertexCount = vcount(rng);
  std::uniform_int_distribution<std::size_t> ecount(0, maxEdges);
  std::uniform_int_distribution<std::size_t> pick(0, g.vertexCount - 1);
  std::vector<int> degree(g.vertexCount, 0);
  const auto target = ecount(rng);
  for (std::size_t tries = 0; tries < 8 * target && g.edges.size() < target; ++tries) {
    const auto a = pick(rng);
    const auto b = pick(rng);
    if (a == b || degree[a] == 4 || degree[b] == 4) {
      continue;
    }
    g.edges.emplace_back(a, b);
    ++degree[a];
    ++degree[b];
  }
  return g;
}

} // namespace trapflow::test
