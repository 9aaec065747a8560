// SPDX-License-Identifier: Apache-2.0

#include "trapflow/MinCostFlow.hpp"
#include "trapflow/Ortho.hpp"

#include <algorithm>
#include <limits>

namespace trapflow {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
} // namespace

std::size_t OrthogonalRep::bendCount() const {
  std::size_t total = 0;
  for (std::size_t d = 0; d < bends.size(); d += 2) {
    total += bends[d].size();
  }
  return total;
}

std::vector<std::size_t> chooseOuterFaces(const PlanarizedGraph& pg) {
  std::vector<std::size_t> size(pg.faceCount, 0);
  std::vector<std::size_t> comp(pg.faceCount, kNone);
  for (std::size_t d = 0; d < pg.dartCount(); ++d) {
    ++size[pg.faceOfDart[d]];
    comp[pg.faceOfDart[d]] = pg.componentOf[pg.tail(d)];
  }
  std::vector<std::size_t> outer(pg.componentCount, kNone);
  for (std::size_t f = 0; f < pg.faceCount; ++f) {
    auto& best = outer[comp[f]];
    if (best == kNone || size[f] > size[best]) {
      best = f;
    }
  }
  return outer;
}

OrthogonalRep orthogonalize(const PlanarizedGraph& pg) {
  const auto vertices = pg.vertexCount();
  const auto darts = pg.dartCount();
  OrthogonalRep rep;
  rep.outerFace = chooseOuterFaces(pg);
  rep.angle.assign(darts, 0);
  rep.bends.assign(darts, {});

  std::vector<bool> isOuter(pg.faceCount, false);
  for (const auto f : rep.outerFace) {
    if (f != kNone) {
      isOuter[f] = true;
    }
  }
  std::vector<long> faceSize(pg.faceCount, 0);
  for (std::size_t d = 0; d < darts; ++d) {
    ++faceSize[pg.faceOfDart[d]];
  }

  MinCostFlow net(vertices + pg.faceCount);
  for (std::size_t v = 0; v < vertices; ++v) {
    if (!pg.rotation[v].empty()) {
      net.addSupply(v, 4);
    }
  }
  for (std::size_t f = 0; f < pg.faceCount; ++f) {
    const long demand = isOuter[f] ? 2 * faceSize[f] + 4 : 2 * faceSize[f] - 4;
    net.addSupply(vertices + f, -demand);
  }
  std::vector<std::size_t> cornerArc(darts);
  for (std::size_t d = 0; d < darts; ++d) {
    cornerArc[d] = net.addArc(pg.head(d), vertices + pg.faceOfDart[d], 1, 4, 0);
  }
  const long unbounded = 4 * static_cast<long>(darts) + 8;
  std::vector<std::pair<std::size_t, std::size_t>> bendArcs(pg.segments.size(),
                                                            {kNone, kNone});
  for (std::size_t s = 0; s < pg.segments.size(); ++s) {
    const auto f = pg.faceOfDart[2 * s];
    const auto g = pg.faceOfDart[2 * s + 1];
    if (f != g) {
      bendArcs[s] = {net.addArc(vertices + f, vertices + g, 0, unbounded, 1),
                     net.addArc(vertices + g, vertices + f, 0, unbounded, 1)};
    }
  }
  if (!net.solve()) {
    throw DrawingError("no orthogonal representation exists for the embedding");
  }
  for (std::size_t d = 0; d < darts; ++d) {
    rep.angle[d] = static_cast<int>(net.flow(cornerArc[d]));
  }
  for (std::size_t s = 0; s < pg.segments.size(); ++s) {
    if (bendArcs[s].first == kNone) {
      continue;
    }
    auto& forward = rep.bends[2 * s];
    forward.insert(forward.end(), static_cast<std::size_t>(net.flow(bendArcs[s].first)), 1);
    forward.insert(forward.end(), static_cast<std::size_t>(net.flow(bendArcs[s].second)), -1);
    auto& backward = rep.bends[2 * s + 1];
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
      backward.push_back(-*it);
    }
  }
  return rep;
}

} // namespace trapflow
