// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Ortho.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace trapflow {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph makeBoostGraph(const SimpleGraph& g, const std::vector<bool>& keep) {
  BoostGraph bg(g.vertexCount);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (keep[k]) {
      boost::add_edge(g.edges[k].first, g.edges[k].second, static_cast<int>(k), bg);
    }
  }
  return bg;
}

bool planar(const SimpleGraph& g, const std::vector<bool>& keep) {
  auto bg = makeBoostGraph(g, keep);
  return boost::boyer_myrvold_planarity_test(bg);
}

std::size_t findRoot(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

class Builder {
public:
  explicit Builder(PlanarizedGraph& pg) : pg_(pg), live_(pg.segments.size(), false) {}

  std::size_t tail(std::size_t d) const {
    const auto& s = pg_.segments[d / 2];
    return d % 2 == 0 ? s.first : s.second;
  }
  std::size_t head(std::size_t d) const { return tail(d ^ 1U); }

  std::size_t position(std::size_t v, std::size_t d) const {
    const auto& r = pg_.rotation[v];
    const auto it = std::find(r.begin(), r.end(), d);
    if (it == r.end()) {
      throw std::logic_error("dart missing from rotation");
    }
    return static_cast<std::size_t>(it - r.begin());
  }

  std::size_t next(std::size_t d) const {
    const auto v = head(d);
    const auto& r = pg_.rotation[v];
    const auto k = position(v, d ^ 1U);
    return r[(k + r.size() - 1) % r.size()];
  }

  void insertBefore(std::size_t v, std::size_t dart, std::size_t before) {
    auto& r = pg_.rotation[v];
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(position(v, before)), dart);
  }

  void replace(std::size_t v, std::size_t oldDart, std::size_t newDart) {
    pg_.rotation[v][position(v, oldDart)] = newDart;
  }

  std::size_t newSegment(std::size_t a, std::size_t b, std::size_t origin) {
    pg_.segments.emplace_back(a, b);
    pg_.segmentOrigin.push_back(origin);
    live_.push_back(true);
    return pg_.segments.size() - 1;
  }

  void markLive(std::size_t s) {
    if (live_.size() < pg_.segments.size()) {
      live_.resize(pg_.segments.size(), false);
    }
    live_[s] = true;
  }

  bool live(std::size_t s) const { return s < live_.size() && live_[s]; }

  std::size_t newVertex() {
    pg_.rotation.emplace_back();
    return pg_.rotation.size() - 1;
  }

  /// Face of each live dart; dead darts get kNone.
  std::size_t computeFaces(std::vector<std::size_t>& face) const {
    face.assign(pg_.segments.size() * 2, kNone);
    std::size_t count = 0;
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (!live(d / 2) || face[d] != kNone) {
        continue;
      }
      auto cur = d;
      do {
        face[cur] = count;
        cur = next(cur);
      } while (cur != d);
      ++count;
    }
    return count;
  }

  /// Splits segment s at a new vertex z. Returns z and the new segment id.
  std::pair<std::size_t, std::size_t> split(std::size_t s) {
    const auto [p, q] = pg_.segments[s];
    const auto z = newVertex();
    pg_.segments[s].second = z;
    const auto n = newSegment(z, q, pg_.segmentOrigin[s]);
    replace(q, 2 * s + 1, 2 * n + 1);
    pg_.rotation[z] = {2 * s + 1, 2 * n};
    return {z, n};
  }

  void insertEdge(std::size_t k) {
    const auto a = pg_.segments[k].first;
    const auto b = pg_.segments[k].second;
    std::vector<std::size_t> face;
    const auto faceCount = computeFaces(face);
    std::vector<std::vector<std::size_t>> walk(faceCount);
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (face[d] != kNone && walk[face[d]].empty()) {
        auto cur = d;
        do {
          walk[face[d]].push_back(cur);
          cur = next(cur);
        } while (cur != d);
      }
    }
    std::vector<bool> isTarget(faceCount, false);
    std::vector<std::size_t> viaFace(faceCount, kNone);
    std::vector<std::size_t> viaDart(faceCount, kNone);
    std::vector<bool> seen(faceCount, false);
    std::deque<std::size_t> queue;
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (face[d] == kNone) {
        continue;
      }
      if (head(d) == b) {
        isTarget[face[d]] = true;
      }
    }
    std::set<std::size_t> sources;
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (face[d] != kNone && head(d) == a) {
        sources.insert(face[d]);
      }
    }
    for (const auto f : sources) {
      seen[f] = true;
      queue.push_back(f);
    }
    std::size_t reached = kNone;
    while (!queue.empty() && reached == kNone) {
      const auto f = queue.front();
      queue.pop_front();
      if (isTarget[f]) {
        reached = f;
        break;
      }
      for (const auto d : walk[f]) {
        const auto g = face[d ^ 1U];
        if (!seen[g]) {
          seen[g] = true;
          viaFace[g] = f;
          viaDart[g] = d;
          queue.push_back(g);
        }
      }
    }
    if (reached == kNone) {
      throw std::logic_error("edge endpoints lie in different components");
    }
    std::vector<std::size_t> crossed;
    for (auto f = reached; viaFace[f] != kNone; f = viaFace[f]) {
      crossed.push_back(viaDart[f]);
    }
    std::reverse(crossed.begin(), crossed.end());
    const auto startFace = crossed.empty() ? reached : face[crossed.front()];

    std::size_t alpha = kNone;
    for (const auto d : walk[startFace]) {
      if (head(d) == a) {
        alpha = d;
        break;
      }
    }
    std::size_t p = a;
    std::size_t segment = k;
    for (const auto d : crossed) {
      const auto s = d / 2;
      const auto [z, n] = split(s);
      const bool forward = d % 2 == 0;
      const auto zx = forward ? 2 * s + 1 : 2 * n;
      const auto zy = forward ? 2 * n : 2 * s + 1;
      const auto yz = zy ^ 1U;
      if (alpha == d) {
        alpha = zy;
      }
      connect(segment, p, z, alpha, zx ^ 1U);
      segment = newSegment(z, b, k);
      pg_.segments[segment] = {z, b};
      p = z;
      alpha = yz;
    }
    auto beta = alpha;
    while (head(beta) != b) {
      beta = next(beta);
    }
    pg_.segments[segment] = {p, b};
    markLive(segment);
    insertBefore(p, 2 * segment, alpha ^ 1U);
    insertBefore(b, 2 * segment + 1, beta ^ 1U);
  }

private:
  /// Places segment s as p -> z, with corners given by the arrival darts.
  void connect(std::size_t s, std::size_t p, std::size_t z, std::size_t arriveP,
               std::size_t arriveZ) {
    pg_.segments[s] = {p, z};
    markLive(s);
    insertBefore(p, 2 * s, arriveP ^ 1U);
    insertBefore(z, 2 * s + 1, arriveZ ^ 1U);
  }

  PlanarizedGraph& pg_;
  std::vector<bool> live_;
};

} // namespace

std::size_t PlanarizedGraph::tail(std::size_t d) const {
  const auto& s = segments.at(d / 2);
  return d % 2 == 0 ? s.first : s.second;
}

std::size_t PlanarizedGraph::head(std::size_t d) const { return tail(d ^ 1U); }

std::size_t PlanarizedGraph::next(std::size_t d) const {
  const auto v = head(d);
  const auto& r = rotation[v];
  const auto it = std::find(r.begin(), r.end(), d ^ 1U);
  const auto k = static_cast<std::size_t>(it - r.begin());
  return r[(k + r.size() - 1) % r.size()];
}

std::vector<std::size_t> PlanarizedGraph::faceDarts(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < dartCount(); ++d) {
    if (faceOfDart[d] == f) {
      auto cur = d;
      do {
        out.push_back(cur);
        cur = next(cur);
      } while (cur != d);
      break;
    }
  }
  return out;
}

bool PlanarizedGraph::eulerHolds() const {
  std::vector<long> v(componentCount, 0);
  std::vector<long> e(componentCount, 0);
  std::vector<std::set<std::size_t>> faces(componentCount);
  for (std::size_t x = 0; x < vertexCount(); ++x) {
    ++v[componentOf[x]];
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto c = componentOf[segments[s].first];
    ++e[c];
    faces[c].insert(faceOfDart[2 * s]);
    faces[c].insert(faceOfDart[2 * s + 1]);
  }
  for (std::size_t c = 0; c < componentCount; ++c) {
    const long f = faces[c].empty() ? 1 : static_cast<long>(faces[c].size());
    if (v[c] - e[c] + f != 2) {
      return false;
    }
  }
  return true;
}

PlanarizedGraph planarize(const SimpleGraph& g) {
  std::vector<std::size_t> degree(g.vertexCount, 0);
  for (const auto& [a, b] : g.edges) {
    if (a >= g.vertexCount || b >= g.vertexCount) {
      throw DrawingError("edge endpoint out of range");
    }
    if (a == b) {
      throw DrawingError("self loops cannot be drawn");
    }
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t v = 0; v < g.vertexCount; ++v) {
    if (degree[v] > 4) {
      throw DrawingError("vertex " + std::to_string(v + 1) + " has degree " +
                         std::to_string(degree[v]) + ", above 4");
    }
  }

  const auto m = g.edges.size();
  std::vector<bool> keep(m, false);
  std::vector<std::size_t> parent(g.vertexCount);
  std::iota(parent.begin(), parent.end(), 0);
  std::set<std::pair<std::size_t, std::size_t>> present;
  const auto key = [](std::pair<std::size_t, std::size_t> e) {
    return std::minmax(e.first, e.second);
  };
  for (std::size_t k = 0; k < m; ++k) {
    const auto ra = findRoot(parent, g.edges[k].first);
    const auto rb = findRoot(parent, g.edges[k].second);
    if (ra != rb) {
      parent[ra] = rb;
      keep[k] = true;
      present.insert(key(g.edges[k]));
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (keep[k] || present.contains(key(g.edges[k]))) {
      continue;
    }
    keep[k] = true;
    if (planar(g, keep)) {
      present.insert(key(g.edges[k]));
    } else {
      keep[k] = false;
    }
  }

  PlanarizedGraph pg;
  pg.originalVertexCount = g.vertexCount;
  pg.segments = g.edges;
  pg.segmentOrigin.resize(m);
  std::iota(pg.segmentOrigin.begin(), pg.segmentOrigin.end(), 0);
  pg.rotation.assign(g.vertexCount, {});

  auto bg = makeBoostGraph(g, keep);
  std::vector<std::vector<BoostEdge>> embedding(g.vertexCount);
  if (!boost::boyer_myrvold_planarity_test(
          boost::boyer_myrvold_params::graph = bg,
          boost::boyer_myrvold_params::embedding = embedding.data())) {
    throw std::logic_error("planar subgraph failed to embed");
  }
  for (std::size_t v = 0; v < g.vertexCount; ++v) {
    for (const auto& e : embedding[v]) {
      const auto k = static_cast<std::size_t>(boost::get(boost::edge_index, bg, e));
      pg.rotation[v].push_back(g.edges[k].first == v ? 2 * k : 2 * k + 1);
    }
  }

  Builder builder(pg);
  for (std::size_t k = 0; k < m; ++k) {
    if (keep[k]) {
      builder.markLive(k);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!keep[k]) {
      builder.insertEdge(k);
    }
  }

  pg.faceCount = builder.computeFaces(pg.faceOfDart);

  pg.componentOf.assign(pg.vertexCount(), kNone);
  for (std::size_t root = 0; root < pg.vertexCount(); ++root) {
    if (pg.componentOf[root] != kNone) {
      continue;
    }
    std::deque<std::size_t> queue{root};
    pg.componentOf[root] = pg.componentCount;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (const auto d : pg.rotation[v]) {
        const auto w = pg.head(d);
        if (pg.componentOf[w] == kNone) {
          pg.componentOf[w] = pg.componentCount;
          queue.push_back(w);
        }
      }
    }
    ++pg.componentCount;
  }

  pg.edgeChain.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    auto d = 2 * k;
    pg.edgeChain[k].push_back(d);
    while (pg.isDummy(pg.head(d))) {
      const auto& r = pg.rotation[pg.head(d)];
      const auto at = static_cast<std::size_t>(
          std::find(r.begin(), r.end(), d ^ 1U) - r.begin());
      d = r[(at + 2) % 4];
      pg.edgeChain[k].push_back(d);
    }
    if (pg.head(d) != g.edges[k].second) {
      throw std::logic_error("edge chain does not reach its target");
    }
  }
  return pg;
}

SimpleGraph toSimpleGraph(const QubitFlowGraph& qfg) {
  SimpleGraph g;
  g.vertexCount = qfg.nodeCount();
  for (const auto& e : qfg.edges()) {
    g.edges.emplace_back(e.from - 1, e.to - 1);
  }
  return g;
}

} // namespace trapflow
