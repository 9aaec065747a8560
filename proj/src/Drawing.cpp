// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Ortho.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace trapflow {

std::size_t OrthogonalDrawing::bendCount() const {
  std::size_t total = 0;
  for (const auto& e : edges) {
    total += e.points.size() >= 2 ? e.points.size() - 2 : 0;
  }
  return total;
}

long OrthogonalDrawing::totalLength() const {
  long total = 0;
  for (const auto& e : edges) {
    for (std::size_t k = 1; k < e.points.size(); ++k) {
      total += std::abs(e.points[k].x - e.points[k - 1].x) +
               std::abs(e.points[k].y - e.points[k - 1].y);
    }
  }
  return total;
}

nlohmann::json OrthogonalDrawing::toJson() const {
  const auto point = [](const GridPoint& p) { return nlohmann::json::array({p.x, p.y}); };
  nlohmann::json jn = nlohmann::json::array();
  for (const auto& n : nodes) {
    jn.push_back({{"id", n.id}, {"x", n.at.x}, {"y", n.at.y}});
  }
  nlohmann::json je = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : e.points) {
      pts.push_back(point(p));
    }
    je.push_back({{"from", e.from}, {"to", e.to}, {"qubit", e.qubit}, {"points", pts}});
  }
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : crossings) {
    jc.push_back(point(c));
  }
  return {{"nodes", jn},
          {"edges", je},
          {"crossings", jc},
          {"bends", bendCount()},
          {"total_length", totalLength()}};
}

std::string OrthogonalDrawing::toSvg() const {
  constexpr long kScale = 40;
  constexpr long kMargin = 30;
  long maxX = 0;
  long maxY = 0;
  for (const auto& n : nodes) {
    maxX = std::max(maxX, n.at.x);
    maxY = std::max(maxY, n.at.y);
  }
  for (const auto& e : edges) {
    for (const auto& p : e.points) {
      maxX = std::max(maxX, p.x);
      maxY = std::max(maxY, p.y);
    }
  }
  const auto sx = [&](long x) { return kMargin + x * kScale; };
  const auto sy = [&](long y) { return kMargin + (maxY - y) * kScale; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kMargin + maxX * kScale
      << "\" height=\"" << 2 * kMargin + maxY * kScale << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : edges) {
    out << "  <polyline fill=\"none\" stroke=\"#335\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < e.points.size(); ++k) {
      out << (k ? " " : "") << sx(e.points[k].x) << "," << sy(e.points[k].y);
    }
    out << "\"><title>q" << e.qubit << ": " << e.from << " -> " << e.to << "</title></polyline>\n";
  }
  for (const auto& c : crossings) {
    out << "  <circle cx=\"" << sx(c.x) << "\" cy=\"" << sy(c.y)
        << "\" r=\"3\" fill=\"#c33\"/>\n";
  }
  for (const auto& n : nodes) {
    out << "  <circle cx=\"" << sx(n.at.x) << "\" cy=\"" << sy(n.at.y)
        << "\" r=\"11\" fill=\"#fde\" stroke=\"#335\"/>\n";
    out << "  <text x=\"" << sx(n.at.x) << "\" y=\"" << sy(n.at.y) + 4
        << "\" font-size=\"11\" text-anchor=\"middle\">" << n.id << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

struct Segment {
  GridPoint a;
  GridPoint b;
  std::size_t edge = 0;
  std::size_t index = 0;
  [[nodiscard]] bool horizontal() const { return a.y == b.y; }
  [[nodiscard]] bool contains(const GridPoint& p) const {
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
  }
  [[nodiscard]] bool isEnd(const GridPoint& p) const { return p == a || p == b; }
};

std::string show(const GridPoint& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

} // namespace

std::vector<std::string> checkDrawing(const OrthogonalDrawing& d) {
  std::vector<std::string> problems;
  std::map<std::uint64_t, GridPoint> where;
  std::set<GridPoint> occupied;
  for (const auto& n : d.nodes) {
    where[n.id] = n.at;
    if (!occupied.insert(n.at).second) {
      problems.push_back("two nodes at " + show(n.at));
    }
  }
  const std::set<GridPoint> crossings(d.crossings.begin(), d.crossings.end());
  std::vector<Segment> segs;
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    const auto& e = d.edges[k];
    const auto label = "edge " + std::to_string(e.from) + "-" + std::to_string(e.to);
    if (e.points.size() < 2) {
      problems.push_back(label + " has fewer than two points");
      continue;
    }
    if (!where.contains(e.from) || !where.contains(e.to) ||
        !(e.points.front() == where[e.from]) || !(e.points.back() == where[e.to])) {
      problems.push_back(label + " does not end at its nodes");
    }
    for (std::size_t i = 1; i < e.points.size(); ++i) {
      const auto& a = e.points[i - 1];
      const auto& b = e.points[i];
      if ((a.x != b.x) == (a.y != b.y)) {
        problems.push_back(label + " segment " + show(a) + "-" + show(b) +
                           " is not axis-aligned");
        continue;
      }
      segs.push_back({a, b, k, i - 1});
    }
  }
  for (const auto& s : segs) {
    for (const auto& n : d.nodes) {
      const auto& e = d.edges[s.edge];
      const bool ownEnd = (n.id == e.from && n.at == s.a && s.index == 0) ||
                          (n.id == e.to && n.at == s.b && s.index + 2 == e.points.size());
      if (s.contains(n.at) && !ownEnd) {
        problems.push_back("edge " + std::to_string(e.from) + "-" + std::to_string(e.to) +
                           " passes through node " + std::to_string(n.id));
      }
    }
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& s = segs[i];
      const auto& t = segs[j];
      const bool sameEdge = s.edge == t.edge;
      if (sameEdge && t.index == s.index + 1) {
        // consecutive: must only share the joint
        if (s.horizontal() == t.horizontal()) {
          problems.push_back("edge " + std::to_string(d.edges[s.edge].from) +
                             " folds back on itself");
        }
        continue;
      }
      if (s.horizontal() == t.horizontal()) {
        const bool sameLine = s.horizontal() ? s.a.y == t.a.y : s.a.x == t.a.x;
        if (!sameLine) {
          continue;
        }
        const long s0 = s.horizontal() ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y);
        const long s1 = s.horizontal() ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y);
        const long t0 = s.horizontal() ? std::min(t.a.x, t.b.x) : std::min(t.a.y, t.b.y);
        const long t1 = s.horizontal() ? std::max(t.a.x, t.b.x) : std::max(t.a.y, t.b.y);
        const long lo = std::max(s0, t0);
        const long hi = std::min(s1, t1);
        if (lo < hi) {
          problems.push_back("segments of edges " + std::to_string(s.edge) + " and " +
                             std::to_string(t.edge) + " overlap");
        } else if (lo == hi) {
          const GridPoint p = s.horizontal() ? GridPoint{lo, s.a.y} : GridPoint{s.a.x, lo};
          if (!occupied.contains(p) || sameEdge) {
            problems.push_back("segments touch at " + show(p));
          }
        }
        continue;
      }
      const auto& h = s.horizontal() ? s : t;
      const auto& v = s.horizontal() ? t : s;
      const GridPoint p{v.a.x, h.a.y};
      if (!h.contains(p) || !v.contains(p)) {
        continue;
      }
      const bool atNode = occupied.contains(p) && h.isEnd(p) && v.isEnd(p) && !sameEdge;
      const bool declared = crossings.contains(p) && !h.isEnd(p) && !v.isEnd(p);
      if (!atNode && !declared) {
        problems.push_back("segments of edges " + std::to_string(s.edge) + " and " +
                           std::to_string(t.edge) + " meet at " + show(p));
      }
    }
  }
  return problems;
}

OrthogonalDrawing drawGraph(const SimpleGraph& g) {
  const auto pg = planarize(g);
  return compact(pg, orthogonalize(pg));
}

OrthogonalDrawing drawQfg(const QubitFlowGraph& qfg) {
  auto d = drawGraph(toSimpleGraph(qfg));
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    d.edges[k].qubit = qfg.edges()[k].qubit;
  }
  return d;
}

} // namespace trapflow
