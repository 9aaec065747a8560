// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/QubitFlow.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trapflow {

/// Undirected multigraph without self loops. Edge k joins edges[k].
struct SimpleGraph {
  std::size_t vertexCount = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Vertex k is instruction k + 1; edge k is qfg.edges()[k].
[[nodiscard]] SimpleGraph toSimpleGraph(const QubitFlowGraph& qfg);

class DrawingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Planar map. Segment s has darts 2s (first -> second) and 2s + 1 back.
/// Vertices at or beyond originalVertexCount are crossing dummies.
struct PlanarizedGraph {
  std::size_t originalVertexCount = 0;
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::vector<std::size_t> segmentOrigin;
  /// Counter-clockwise dart order around each vertex.
  std::vector<std::vector<std::size_t>> rotation;
  /// Left face of each dart.
  std::vector<std::size_t> faceOfDart;
  std::size_t faceCount = 0;
  std::vector<std::size_t> componentOf;
  std::size_t componentCount = 0;
  /// Darts from source to target for each original edge.
  std::vector<std::vector<std::size_t>> edgeChain;

  [[nodiscard]] std::size_t vertexCount() const { return rotation.size(); }
  [[nodiscard]] std::size_t dartCount() const { return segments.size() * 2; }
  [[nodiscard]] bool isDummy(std::size_t v) const { return v >= originalVertexCount; }
  [[nodiscard]] std::size_t crossingCount() const {
    return vertexCount() - originalVertexCount;
  }
  [[nodiscard]] std::size_t tail(std::size_t d) const;
  [[nodiscard]] std::size_t head(std::size_t d) const;
  /// Next dart along the left face of d.
  [[nodiscard]] std::size_t next(std::size_t d) const;
  /// Darts of face f in walk order, starting at its smallest dart.
  [[nodiscard]] std::vector<std::size_t> faceDarts(std::size_t f) const;
  /// V - E + F = 2 for every component (a lone vertex counts one face).
  [[nodiscard]] bool eulerHolds() const;
};

/// Maximal planar subgraph plus dual-shortest-path insertion of the rest.
/// Throws DrawingError for a vertex of degree above 4.
[[nodiscard]] PlanarizedGraph planarize(const SimpleGraph& g);

struct OrthogonalRep {
  /// Corner at the head of each dart inside its left face, in right angles.
  std::vector<int> angle;
  /// Turns met walking along each dart, +1 left, -1 right.
  std::vector<std::vector<int>> bends;
  /// Outer face per component; lone-vertex components map to SIZE_MAX.
  std::vector<std::size_t> outerFace;

  [[nodiscard]] std::size_t bendCount() const;
};

/// Bend-minimal representation for the embedding, by min-cost flow.
[[nodiscard]] OrthogonalRep orthogonalize(const PlanarizedGraph& pg);

/// Largest face of each component, ties to the lowest face id.
[[nodiscard]] std::vector<std::size_t> chooseOuterFaces(const PlanarizedGraph& pg);

struct GridPoint {
  long x = 0;
  long y = 0;
  bool operator==(const GridPoint&) const = default;
  auto operator<=>(const GridPoint&) const = default;
};

struct DrawnNode {
  std::uint64_t id = 0;
  GridPoint at;
};

struct DrawnEdge {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t qubit = 0;
  /// Polyline from the source node to the target node, corners only.
  std::vector<GridPoint> points;
};

/// y grows upward.
struct OrthogonalDrawing {
  std::vector<DrawnNode> nodes;
  std::vector<DrawnEdge> edges;
  std::vector<GridPoint> crossings;

  [[nodiscard]] std::size_t bendCount() const;
  [[nodiscard]] long totalLength() const;
  [[nodiscard]] nlohmann::json toJson() const;
  [[nodiscard]] std::string toSvg() const;
};

/// Rectangular refinement and longest-path compaction per axis. Node ids
/// are vertex index + 1; edge qubit labels are edge indices.
[[nodiscard]] OrthogonalDrawing compact(const PlanarizedGraph& pg, const OrthogonalRep& rep);

/// Problems found in the drawing; empty when valid.
[[nodiscard]] std::vector<std::string> checkDrawing(const OrthogonalDrawing& d);

/// planarize, orthogonalize and compact.
[[nodiscard]] OrthogonalDrawing drawGraph(const SimpleGraph& g);
/// Same, labelled with instruction ids and qubits.
[[nodiscard]] OrthogonalDrawing drawQfg(const QubitFlowGraph& qfg);

} // namespace trapflow
