// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Ortho.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

namespace trapflow {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

int wrap(int d) { return ((d % 4) + 4) % 4; }

/// Bend-free orthogonal map used during compaction. Directions are
/// 0 east, 1 north, 2 west, 3 south.
class Work {
public:
  std::size_t addVertex() {
    rot_.emplace_back();
    return rot_.size() - 1;
  }

  std::size_t addSegment(std::size_t a, std::size_t b) {
    seg_.emplace_back(a, b);
    dir_.push_back(-1);
    dir_.push_back(-1);
    angle_.push_back(0);
    angle_.push_back(0);
    return seg_.size() - 1;
  }

  [[nodiscard]] std::size_t vertexCount() const { return rot_.size(); }
  [[nodiscard]] std::size_t dartCount() const { return seg_.size() * 2; }
  [[nodiscard]] std::size_t tail(std::size_t d) const {
    return d % 2 == 0 ? seg_[d / 2].first : seg_[d / 2].second;
  }
  [[nodiscard]] std::size_t head(std::size_t d) const { return tail(d ^ 1U); }
  std::vector<std::size_t>& rot(std::size_t v) { return rot_[v]; }
  int& dir(std::size_t d) { return dir_[d]; }
  int& angle(std::size_t d) { return angle_[d]; }

  [[nodiscard]] std::size_t next(std::size_t d) const {
    const auto& r = rot_[head(d)];
    const auto at = static_cast<std::size_t>(std::find(r.begin(), r.end(), d ^ 1U) - r.begin());
    return r[(at + r.size() - 1) % r.size()];
  }

  /// Turn at the head of d walking with the face on the left.
  [[nodiscard]] int turn(std::size_t d) const {
    switch (wrap(dir_[next(d)] - dir_[d])) {
    case 0:
      return 0;
    case 1:
      return 1;
    case 3:
      return -1;
    default:
      return -2;
    }
  }

  void sortRotation(std::size_t v) {
    std::sort(rot_[v].begin(), rot_[v].end(),
              [this](std::size_t a, std::size_t b) { return dir_[a] < dir_[b]; });
  }

  /// Segment with both dart directions set and inserted by direction.
  std::size_t link(std::size_t a, std::size_t b, int direction) {
    const auto s = addSegment(a, b);
    dir_[2 * s] = direction;
    dir_[2 * s + 1] = wrap(direction + 2);
    rot_[a].push_back(2 * s);
    rot_[b].push_back(2 * s + 1);
    sortRotation(a);
    sortRotation(b);
    return s;
  }

  /// Splits segment s at a new vertex.
  std::size_t split(std::size_t s) {
    const auto [p, q] = seg_[s];
    const auto z = addVertex();
    seg_[s].second = z;
    const auto n = addSegment(z, q);
    dir_[2 * n] = dir_[2 * s];
    dir_[2 * n + 1] = dir_[2 * s + 1];
    auto& rq = rot_[q];
    *std::find(rq.begin(), rq.end(), 2 * s + 1) = 2 * n + 1;
    rot_[z] = {2 * s + 1, 2 * n};
    sortRotation(z);
    return z;
  }

  /// Face id per dart, numbered in order of each face's smallest dart.
  std::size_t faces(std::vector<std::size_t>& face) const {
    face.assign(dartCount(), kNone);
    std::size_t count = 0;
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (face[d] != kNone) {
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

  [[nodiscard]] std::vector<std::size_t> walk(std::size_t start) const {
    std::vector<std::size_t> out;
    auto cur = start;
    do {
      out.push_back(cur);
      cur = next(cur);
    } while (cur != start);
    return out;
  }

  [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& segments() const {
    return seg_;
  }
  [[nodiscard]] int direction(std::size_t d) const { return dir_[d]; }

private:
  std::vector<std::pair<std::size_t, std::size_t>> seg_;
  std::vector<int> dir_;
  std::vector<int> angle_;
  std::vector<std::vector<std::size_t>> rot_;
};

void assignDirections(Work& w) {
  if (w.dartCount() == 0) {
    return;
  }
  std::vector<std::size_t> before(w.dartCount());
  for (std::size_t d = 0; d < w.dartCount(); ++d) {
    before[d] = w.next(d);
  }
  std::deque<std::size_t> queue{0};
  w.dir(0) = 0;
  const auto set = [&](std::size_t d, int value) {
    if (w.dir(d) < 0) {
      w.dir(d) = wrap(value);
      queue.push_back(d);
    } else if (w.dir(d) != wrap(value)) {
      throw std::logic_error("orthogonal representation is not realizable");
    }
  };
  while (!queue.empty()) {
    const auto d = queue.front();
    queue.pop_front();
    set(d ^ 1U, w.dir(d) + 2);
    set(before[d], w.dir(d) + 2 - w.angle(d));
  }
  for (std::size_t v = 0; v < w.vertexCount(); ++v) {
    w.sortRotation(v);
  }
  for (std::size_t d = 0; d < w.dartCount(); ++d) {
    if (w.dir(d) < 0 || w.next(d) != before[d]) {
      throw std::logic_error("orthogonal representation is not realizable");
    }
  }
}

/// Adds a bounding rectangle joined to the outer face. Returns a dart whose
/// left face is the new outer face.
std::size_t addFrame(Work& w, std::size_t outerDart) {
  const auto darts = w.walk(outerDart);
  auto start = std::min_element(darts.begin(), darts.end());
  std::vector<std::size_t> ordered(start, darts.end());
  ordered.insert(ordered.end(), darts.begin(), start);
  std::size_t anchor = kNone;
  for (const auto d : ordered) {
    if (w.turn(d) < 0) {
      anchor = d;
      break;
    }
  }
  if (anchor == kNone) {
    throw std::logic_error("outer face has no reflex corner");
  }
  const auto v = w.head(anchor);
  const int heading = wrap(w.direction(anchor) + 1);
  std::size_t corner[4];
  for (auto& c : corner) {
    c = w.addVertex();
  }
  // SW, SE, NE, NW walked counter-clockwise.
  std::size_t side[4];
  for (int k = 0; k < 4; ++k) {
    side[k] = w.link(corner[k], corner[(k + 1) % 4], k);
  }
  // side k heads direction k and faces direction k - 1.
  const auto facing = side[wrap(heading + 1)];
  const auto outside = 2 * side[0] + 1;
  const auto hit = w.split(facing);
  w.link(v, hit, heading);
  return outside;
}

void refine(Work& w, std::size_t outerDart) {
  const std::size_t limit = 16 * (w.dartCount() + 8);
  for (std::size_t round = 0; round < limit; ++round) {
    std::vector<std::size_t> face;
    const auto faceCount = w.faces(face);
    const auto outer = face[outerDart];
    std::vector<std::size_t> first(faceCount, kNone);
    for (std::size_t d = 0; d < face.size(); ++d) {
      if (first[face[d]] == kNone) {
        first[face[d]] = d;
      }
    }
    bool changed = false;
    for (std::size_t f = 0; f < faceCount && !changed; ++f) {
      if (f == outer) {
        continue;
      }
      const auto darts = w.walk(first[f]);
      const auto n = darts.size();
      std::vector<int> turns(n);
      for (std::size_t k = 0; k < n; ++k) {
        turns[k] = w.turn(darts[k]);
      }
      for (std::size_t i = 0; i < n && !changed; ++i) {
        if (turns[i] >= 0) {
          continue;
        }
        int sum = turns[i];
        std::size_t j = i;
        bool ok = false;
        for (std::size_t step = 1; step < n; ++step) {
          j = (i + step) % n;
          if (turns[j] == 0) {
            continue;
          }
          if (turns[j] < 0) {
            break;
          }
          if (++sum == 1) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          continue;
        }
        const auto e = darts[i];
        const auto front = darts[(j + 1) % n];
        const auto z = w.split(front / 2);
        w.link(w.head(e), z, w.direction(e));
        changed = true;
      }
    }
    if (!changed) {
      return;
    }
  }
  throw std::logic_error("rectangular refinement did not terminate");
}

std::size_t findRoot(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

/// Longest-path coordinate along one axis. `axis` 0 assigns x from
/// horizontal segments, 1 assigns y from vertical ones.
std::vector<long> coordinates(const Work& w, int axis) {
  const auto n = w.vertexCount();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto& segs = w.segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const bool alongAxis = w.direction(2 * s) % 2 == axis;
    if (!alongAxis) {
      const auto a = findRoot(parent, segs[s].first);
      const auto b = findRoot(parent, segs[s].second);
      parent[a] = b;
    }
  }
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto d = w.direction(2 * s);
    if (d % 2 != axis) {
      continue;
    }
    auto lo = findRoot(parent, segs[s].first);
    auto hi = findRoot(parent, segs[s].second);
    if (d >= 2) {
      std::swap(lo, hi);
    }
    succ[lo].push_back(hi);
    ++indegree[hi];
  }
  std::vector<long> value(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (findRoot(parent, v) == v && indegree[v] == 0) {
      queue.push_back(v);
    }
  }
  std::size_t done = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    ++done;
    for (const auto s : succ[v]) {
      value[s] = std::max(value[s], value[v] + 1);
      if (--indegree[s] == 0) {
        queue.push_back(s);
      }
    }
  }
  std::size_t classes = 0;
  for (std::size_t v = 0; v < n; ++v) {
    classes += findRoot(parent, v) == v ? 1 : 0;
  }
  if (done != classes) {
    throw std::logic_error("compaction constraints are cyclic");
  }
  std::vector<long> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = value[findRoot(parent, v)];
  }
  return out;
}

std::vector<GridPoint> simplify(const std::vector<GridPoint>& raw) {
  std::vector<GridPoint> pts;
  for (const auto& p : raw) {
    if (pts.empty() || !(pts.back() == p)) {
      pts.push_back(p);
    }
  }
  std::vector<GridPoint> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0 && k + 1 < pts.size()) {
      const auto& a = out.back();
      const auto& b = pts[k];
      const auto& c = pts[k + 1];
      if ((a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y)) {
        continue;
      }
    }
    out.push_back(pts[k]);
  }
  return out;
}

} // namespace

OrthogonalDrawing compact(const PlanarizedGraph& pg, const OrthogonalRep& rep) {
  OrthogonalDrawing drawing;
  std::vector<GridPoint> position(pg.vertexCount());
  std::vector<std::vector<GridPoint>> chainPoints(pg.segments.size());
  long offsetX = 0;

  for (std::size_t c = 0; c < pg.componentCount; ++c) {
    Work w;
    std::vector<std::size_t> local(pg.vertexCount(), kNone);
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < pg.vertexCount(); ++v) {
      if (pg.componentOf[v] == c) {
        local[v] = w.addVertex();
        members.push_back(v);
      }
    }
    // Work vertices along each planarized segment, tail to head.
    std::map<std::size_t, std::vector<std::size_t>> path;
    std::vector<std::size_t> firstOut(pg.dartCount(), kNone);
    std::vector<std::size_t> lastIn(pg.dartCount(), kNone);
    for (std::size_t s = 0; s < pg.segments.size(); ++s) {
      if (pg.componentOf[pg.segments[s].first] != c) {
        continue;
      }
      const auto& turns = rep.bends[2 * s];
      std::vector<std::size_t> verts{local[pg.segments[s].first]};
      for (std::size_t k = 0; k < turns.size(); ++k) {
        verts.push_back(w.addVertex());
      }
      verts.push_back(local[pg.segments[s].second]);
      std::vector<std::size_t> parts;
      for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        parts.push_back(w.addSegment(verts[k], verts[k + 1]));
      }
      for (std::size_t k = 0; k < turns.size(); ++k) {
        // bend vertex verts[k + 1] joins parts[k] and parts[k + 1]
        w.angle(2 * parts[k]) = 2 - turns[k];
        w.angle(2 * parts[k + 1] + 1) = 2 + turns[k];
        w.rot(verts[k + 1]) = {2 * parts[k] + 1, 2 * parts[k + 1]};
      }
      w.angle(2 * parts.back()) = rep.angle[2 * s];
      w.angle(2 * parts.front() + 1) = rep.angle[2 * s + 1];
      firstOut[2 * s] = 2 * parts.front();
      firstOut[2 * s + 1] = 2 * parts.back() + 1;
      lastIn[2 * s] = 2 * parts.back();
      lastIn[2 * s + 1] = 2 * parts.front() + 1;
      path[s] = verts;
    }
    for (const auto v : members) {
      for (const auto d : pg.rotation[v]) {
        w.rot(local[v]).push_back(firstOut[d]);
      }
    }

    std::vector<long> xs(w.vertexCount(), 0);
    std::vector<long> ys(w.vertexCount(), 0);
    if (w.dartCount() > 0) {
      assignDirections(w);
      const auto outerPg = rep.outerFace.at(c);
      std::size_t outerDart = kNone;
      for (std::size_t d = 0; d < pg.dartCount(); ++d) {
        if (pg.faceOfDart[d] == outerPg) {
          outerDart = lastIn[d];
          break;
        }
      }
      const auto frameOuter = addFrame(w, outerDart);
      refine(w, frameOuter);
      xs = coordinates(w, 0);
      ys = coordinates(w, 1);
    }

    long minX = std::numeric_limits<long>::max();
    long minY = std::numeric_limits<long>::max();
    long maxX = std::numeric_limits<long>::min();
    const auto note = [&](std::size_t wv) {
      minX = std::min(minX, xs[wv]);
      minY = std::min(minY, ys[wv]);
      maxX = std::max(maxX, xs[wv]);
    };
    for (const auto v : members) {
      note(local[v]);
    }
    for (const auto& [s, verts] : path) {
      for (const auto wv : verts) {
        note(wv);
      }
    }
    const auto place = [&](std::size_t wv) {
      return GridPoint{xs[wv] - minX + offsetX, ys[wv] - minY};
    };
    for (const auto v : members) {
      position[v] = place(local[v]);
    }
    for (const auto& [s, verts] : path) {
      for (const auto wv : verts) {
        chainPoints[s].push_back(place(wv));
      }
    }
    offsetX += maxX - minX + 2;
  }

  for (std::size_t v = 0; v < pg.originalVertexCount; ++v) {
    drawing.nodes.push_back({v + 1, position[v]});
  }
  for (std::size_t v = pg.originalVertexCount; v < pg.vertexCount(); ++v) {
    drawing.crossings.push_back(position[v]);
  }
  for (std::size_t k = 0; k < pg.edgeChain.size(); ++k) {
    std::vector<GridPoint> raw;
    for (const auto d : pg.edgeChain[k]) {
      auto pts = chainPoints[d / 2];
      if (d % 2 == 1) {
        std::reverse(pts.begin(), pts.end());
      }
      raw.insert(raw.end(), pts.begin(), pts.end());
    }
    DrawnEdge e;
    e.from = pg.tail(pg.edgeChain[k].front()) + 1;
    e.to = pg.head(pg.edgeChain[k].back()) + 1;
    e.qubit = k;
    e.points = simplify(raw);
    drawing.edges.push_back(std::move(e));
  }
  return drawing;
}

} // namespace trapflow
