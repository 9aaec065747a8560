// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Netlist.hpp"
#include "trapflow/Ortho.hpp"
#include "trapflow/QubitFlow.hpp"
#include "trapflow/Schedule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trapflow {

/// Port bits.
enum Port : std::uint8_t { kEast = 1, kNorth = 2, kWest = 4, kSouth = 8 };

/// 0 east, 1 north, 2 west, 3 south.
[[nodiscard]] std::uint8_t portOf(int direction);

enum class BlockKind : std::uint8_t {
  StraightH,
  StraightV,
  Turn,
  Tee,
  Cross,
  GateStraightH,
  GateStraightV,
  DeadEnd,
};

[[nodiscard]] std::string blockName(BlockKind kind);

struct Macroblock {
  BlockKind kind = BlockKind::StraightH;
  std::uint8_t ports = 0;
  [[nodiscard]] bool hasGateLocation() const {
    return kind == BlockKind::GateStraightH || kind == BlockKind::GateStraightV;
  }
};

struct Cell {
  long x = 0;
  long y = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

[[nodiscard]] Cell step(Cell c, int direction);

class LayoutError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grid of macroblocks, y growing upward.
class MacroLayout {
public:
  MacroLayout() = default;
  MacroLayout(long width, long height);

  [[nodiscard]] long width() const { return width_; }
  [[nodiscard]] long height() const { return height_; }
  [[nodiscard]] bool inside(Cell c) const;
  [[nodiscard]] const std::optional<Macroblock>& at(Cell c) const;
  void set(Cell c, Macroblock block);

  /// Cells reachable through a shared port, in port order E, N, W, S.
  [[nodiscard]] std::vector<Cell> neighbors(Cell c) const;
  [[nodiscard]] bool connected(Cell a, Cell b) const;
  /// Every occupied cell, row-major from the bottom.
  [[nodiscard]] std::vector<Cell> cells() const;
  [[nodiscard]] std::vector<Cell> gateCells() const;
  /// Whether the channel graph is one connected piece.
  [[nodiscard]] bool channelConnected() const;

  std::map<InstrId, Cell> gateLocationOf;

  [[nodiscard]] std::string toText() const;
  [[nodiscard]] std::string toSvg() const;
  [[nodiscard]] nlohmann::json toJson() const;

private:
  long width_ = 0;
  long height_ = 0;
  std::vector<std::optional<Macroblock>> grid_;
};

/// Qubit drawing edges and node cells kept from tiling, used by routing.
struct TiledDrawing {
  MacroLayout layout;
  std::map<std::uint64_t, Cell> nodeCell;
  /// Cells of each drawn edge from source to target node.
  std::vector<std::vector<Cell>> edgeCells;
  long scale = 3;
};

/// Builds the macroblock grid for a drawing. Node ids are instruction ids.
/// Throws LayoutError on inconsistent port demands.
[[nodiscard]] TiledDrawing tile(const OrthogonalDrawing& drawing);

/// One-qubit sources with a single out-edge share their successor's gate
/// location (at most one per successor).
void foldGateLocations(TiledDrawing& tiled, const Netlist& netlist,
                       const QubitFlowGraph& qfg);

struct Traversal {
  Cell cell;
  bool turn = false;
};

struct Route {
  Qubit qubit = 0;
  /// 0 for the initial move from the placement cell.
  InstrId from = 0;
  InstrId to = 0;
  std::vector<Traversal> path;

  [[nodiscard]] std::size_t straights() const;
  [[nodiscard]] std::size_t turns() const;
};

struct InitialPlacement {
  std::map<Qubit, Cell> cell;
};

struct RoutePlan {
  std::vector<Route> routes;
  /// Qubits that move into each instruction's gate location.
  std::map<InstrId, std::vector<Qubit>> movers;

  [[nodiscard]] const Route* find(Qubit q, InstrId to) const;
};

/// Tags each entered cell straight or turn; the start cell is not entered.
[[nodiscard]] std::vector<Traversal> tagPath(const std::vector<Cell>& cells);

struct PlacementResult {
  InitialPlacement placement;
  /// Moves from a displaced start cell to the first gate location.
  std::vector<Route> initialMoves;
};

/// Appends a storage channel above the layout when it has fewer non-gate
/// cells than the netlist has qubits.
void reserveIdleCells(MacroLayout& layout, const Netlist& netlist);

[[nodiscard]] PlacementResult placeQubits(const Netlist& netlist, const Schedule& schedule,
                                          const MacroLayout& layout);

[[nodiscard]] RoutePlan route(const QubitFlowGraph& qfg, const TiledDrawing& tiled,
                              const PlacementResult& placement);

/// Problems with a plan against a layout; empty when every route is
/// realizable and ends where it should.
[[nodiscard]] std::vector<std::string> checkRoutes(const MacroLayout& layout,
                                                   const RoutePlan& plan,
                                                   const InitialPlacement& placement);

[[nodiscard]] nlohmann::json placementToJson(const InitialPlacement& p);
[[nodiscard]] nlohmann::json routesToJson(const RoutePlan& plan);

} // namespace trapflow
