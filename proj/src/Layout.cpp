// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Layout.hpp"

#include "trapflow/Dependency.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace trapflow {

namespace {

constexpr long kMargin = 2;
constexpr long kMaxScale = 9;

int opposite(int d) { return (d + 2) % 4; }

int directionBetween(Cell a, Cell b) {
  if (b.x == a.x + 1 && b.y == a.y) {
    return 0;
  }
  if (b.y == a.y + 1 && b.x == a.x) {
    return 1;
  }
  if (b.x == a.x - 1 && b.y == a.y) {
    return 2;
  }
  if (b.y == a.y - 1 && b.x == a.x) {
    return 3;
  }
  return -1;
}

std::string show(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

bool isStraight(std::uint8_t ports) {
  return ports == (kEast | kWest) || ports == (kNorth | kSouth);
}

std::string portString(std::uint8_t ports) {
  std::string s;
  for (const auto& [bit, ch] : {std::pair{kNorth, 'N'}, {kEast, 'E'}, {kSouth, 'S'}, {kWest, 'W'}}) {
    if (ports & bit) {
      s += ch;
    }
  }
  return s;
}

struct NeedsMoreRoom {};

class Tiler {
public:
  Tiler(const OrthogonalDrawing& d, long scale) : drawing_(d), scale_(scale) {
    for (const auto& n : d.nodes) {
      minX_ = std::min(minX_, n.at.x);
      minY_ = std::min(minY_, n.at.y);
      maxX_ = std::max(maxX_, n.at.x);
      maxY_ = std::max(maxY_, n.at.y);
    }
    for (const auto& e : d.edges) {
      for (const auto& p : e.points) {
        minX_ = std::min(minX_, p.x);
        minY_ = std::min(minY_, p.y);
        maxX_ = std::max(maxX_, p.x);
        maxY_ = std::max(maxY_, p.y);
      }
    }
    if (d.nodes.empty()) {
      minX_ = minY_ = maxX_ = maxY_ = 0;
    }
  }

  TiledDrawing run() {
    TiledDrawing out;
    out.scale = scale_;
    for (const auto& n : drawing_.nodes) {
      const auto c = map(n.at);
      out.nodeCell[n.id] = c;
      ports_.try_emplace(c, 0);
      nodeAt_[c] = n.id;
    }
    for (const auto& c : drawing_.crossings) {
      crossing_.insert(map(c));
    }
    for (const auto& e : drawing_.edges) {
      out.edgeCells.push_back(walk(e));
    }
    checkJunctions();
    std::map<std::uint64_t, Cell> gate;
    for (const auto& n : drawing_.nodes) {
      gate[n.id] = placeGate(out.nodeCell.at(n.id));
    }

    MacroLayout layout((maxX_ - minX_) * scale_ + 2 * kMargin + 1,
                       (maxY_ - minY_) * scale_ + 2 * kMargin + 1);
    for (const auto& [c, ports] : ports_) {
      Macroblock b;
      b.ports = ports;
      if (gateCells_.contains(c)) {
        if (!isStraight(ports)) {
          throw LayoutError("inconsistent port demand at gate cell " + show(c));
        }
        b.kind = ports == (kEast | kWest) ? BlockKind::GateStraightH : BlockKind::GateStraightV;
      } else {
        switch (std::popcount(ports)) {
        case 1:
          b.kind = BlockKind::DeadEnd;
          break;
        case 2:
          b.kind = ports == (kEast | kWest)     ? BlockKind::StraightH
                   : ports == (kNorth | kSouth) ? BlockKind::StraightV
                                                : BlockKind::Turn;
          break;
        case 3:
          b.kind = BlockKind::Tee;
          break;
        case 4:
          b.kind = BlockKind::Cross;
          break;
        default:
          throw LayoutError("cell " + show(c) + " has no ports");
        }
      }
      layout.set(c, b);
    }
    for (const auto& [id, c] : gate) {
      layout.gateLocationOf[id] = c;
    }
    out.layout = std::move(layout);
    return out;
  }

private:
  Cell map(const GridPoint& p) const {
    return {(p.x - minX_) * scale_ + kMargin, (p.y - minY_) * scale_ + kMargin};
  }

  void addPort(Cell c, int d) {
    auto& ports = ports_[c];
    const auto bit = portOf(d);
    if (ports & bit) {
      throw LayoutError("inconsistent port demand at " + show(c));
    }
    ports |= bit;
  }

  std::vector<Cell> walk(const DrawnEdge& e) {
    std::vector<Cell> cells;
    if (e.points.empty()) {
      return cells;
    }
    cells.push_back(map(e.points.front()));
    for (std::size_t k = 1; k < e.points.size(); ++k) {
      const auto target = map(e.points[k]);
      while (cells.back() != target) {
        const auto cur = cells.back();
        Cell next = cur;
        if (target.x != cur.x && target.y != cur.y) {
          throw LayoutError("diagonal edge segment at " + show(cur));
        }
        next.x += (target.x > cur.x) - (target.x < cur.x);
        next.y += (target.y > cur.y) - (target.y < cur.y);
        const auto d = directionBetween(cur, next);
        addPort(cur, d);
        addPort(next, opposite(d));
        cells.push_back(next);
      }
    }
    for (std::size_t k = 1; k + 1 < cells.size(); ++k) {
      if (nodeAt_.contains(cells[k])) {
        throw LayoutError("edge passes through the node at " + show(cells[k]));
      }
    }
    return cells;
  }

  void checkJunctions() const {
    for (const auto& [c, ports] : ports_) {
      const auto n = std::popcount(ports);
      if (nodeAt_.contains(c)) {
        continue;
      }
      if (n == 4 && !crossing_.contains(c)) {
        throw LayoutError("undeclared crossing at " + show(c));
      }
      if (n == 3) {
        throw LayoutError("inconsistent port demand at " + show(c));
      }
    }
  }

  bool freeCell(Cell c) const {
    return !ports_.contains(c) && !claimed_.contains(c);
  }

  void claim(Cell c, std::uint8_t ports) {
    claimed_.insert(c);
    ports_[c] |= ports;
  }

  Cell placeGate(Cell node) {
    const auto ports = ports_.at(node);
    const auto degree = std::popcount(ports);
    if (degree == 2 && isStraight(ports)) {
      gateCells_.insert(node);
      return node;
    }
    if (degree == 4) {
      const auto g = step(node, 0);
      gateCells_.insert(g);
      return g;
    }
    if (degree == 0) {
      for (const int d : {0, 1}) {
        const auto a = step(node, d);
        const auto b = step(node, opposite(d));
        if (freeCell(a) && freeCell(b)) {
          ports_[node] |= portOf(d) | portOf(opposite(d));
          claim(a, portOf(opposite(d)));
          claim(b, portOf(d));
          gateCells_.insert(node);
          return node;
        }
      }
      throw NeedsMoreRoom{};
    }
    if (degree == 1) {
      const int e = std::countr_zero(ports);
      const auto cap = step(node, opposite(e));
      if (freeCell(cap)) {
        ports_[node] |= portOf(opposite(e));
        claim(cap, portOf(e));
        gateCells_.insert(node);
        return node;
      }
    }
    for (int d = 0; d < 4; ++d) {
      if (ports & portOf(d)) {
        continue;
      }
      const auto g = step(node, d);
      const auto end = step(g, d);
      if (freeCell(g) && freeCell(end)) {
        ports_[node] |= portOf(d);
        claim(g, portOf(d) | portOf(opposite(d)));
        claim(end, portOf(opposite(d)));
        gateCells_.insert(g);
        return g;
      }
    }
    throw NeedsMoreRoom{};
  }

  const OrthogonalDrawing& drawing_;
  long scale_;
  long minX_ = 0;
  long minY_ = 0;
  long maxX_ = 0;
  long maxY_ = 0;
  std::map<Cell, std::uint8_t> ports_;
  std::map<Cell, std::uint64_t> nodeAt_;
  std::set<Cell> crossing_;
  std::set<Cell> claimed_;
  std::set<Cell> gateCells_;
};

} // namespace

std::uint8_t portOf(int direction) {
  static constexpr std::uint8_t kBits[] = {kEast, kNorth, kWest, kSouth};
  return kBits[direction & 3];
}

std::string blockName(BlockKind kind) {
  switch (kind) {
  case BlockKind::StraightH:
    return "STRAIGHT_H";
  case BlockKind::StraightV:
    return "STRAIGHT_V";
  case BlockKind::Turn:
    return "TURN";
  case BlockKind::Tee:
    return "TEE";
  case BlockKind::Cross:
    return "CROSS";
  case BlockKind::GateStraightH:
    return "GATE_STRAIGHT_H";
  case BlockKind::GateStraightV:
    return "GATE_STRAIGHT_V";
  case BlockKind::DeadEnd:
    return "DEAD_END";
  }
  return "?";
}

Cell step(Cell c, int direction) {
  switch (direction & 3) {
  case 0:
    return {c.x + 1, c.y};
  case 1:
    return {c.x, c.y + 1};
  case 2:
    return {c.x - 1, c.y};
  default:
    return {c.x, c.y - 1};
  }
}

MacroLayout::MacroLayout(long width, long height)
    : width_(width), height_(height),
      grid_(static_cast<std::size_t>(width * height)) {}

bool MacroLayout::inside(Cell c) const {
  return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
}

const std::optional<Macroblock>& MacroLayout::at(Cell c) const {
  static const std::optional<Macroblock> kNone;
  if (!inside(c)) {
    return kNone;
  }
  return grid_[static_cast<std::size_t>(c.y * width_ + c.x)];
}

void MacroLayout::set(Cell c, Macroblock block) {
  if (!inside(c)) {
    throw LayoutError("cell " + show(c) + " outside the layout");
  }
  grid_[static_cast<std::size_t>(c.y * width_ + c.x)] = block;
}

std::vector<Cell> MacroLayout::neighbors(Cell c) const {
  std::vector<Cell> out;
  const auto& b = at(c);
  if (!b) {
    return out;
  }
  for (int d = 0; d < 4; ++d) {
    if (!(b->ports & portOf(d))) {
      continue;
    }
    const auto n = step(c, d);
    const auto& nb = at(n);
    if (nb && (nb->ports & portOf(opposite(d)))) {
      out.push_back(n);
    }
  }
  return out;
}

bool MacroLayout::connected(Cell a, Cell b) const {
  const auto n = neighbors(a);
  return std::find(n.begin(), n.end(), b) != n.end();
}

std::vector<Cell> MacroLayout::cells() const {
  std::vector<Cell> out;
  for (long y = 0; y < height_; ++y) {
    for (long x = 0; x < width_; ++x) {
      if (at({x, y})) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

std::vector<Cell> MacroLayout::gateCells() const {
  std::vector<Cell> out;
  for (const auto c : cells()) {
    if (at(c)->hasGateLocation()) {
      out.push_back(c);
    }
  }
  return out;
}

bool MacroLayout::channelConnected() const {
  const auto all = cells();
  if (all.empty()) {
    return true;
  }
  std::set<Cell> seen{all.front()};
  std::deque<Cell> queue{all.front()};
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (const auto n : neighbors(c)) {
      if (seen.insert(n).second) {
        queue.push_back(n);
      }
    }
  }
  return seen.size() == all.size();
}

std::string MacroLayout::toText() const {
  // Three glyph rows per macroblock row, north first.
  std::ostringstream out;
  for (long y = height_ - 1; y >= 0; --y) {
    for (int r = 0; r < 3; ++r) {
      std::string line;
      for (long x = 0; x < width_; ++x) {
        const auto& b = at({x, y});
        if (!b) {
          line += "   ";
          continue;
        }
        std::string row = "###";
        if (r == 0 && (b->ports & kNorth)) {
          row[1] = '.';
        }
        if (r == 2 && (b->ports & kSouth)) {
          row[1] = '.';
        }
        if (r == 1) {
          row[0] = (b->ports & kWest) ? '.' : '#';
          row[1] = b->hasGateLocation() ? 'G' : '.';
          row[2] = (b->ports & kEast) ? '.' : '#';
        }
        line += row;
      }
      while (!line.empty() && line.back() == ' ') {
        line.pop_back();
      }
      out << line << '\n';
    }
  }
  return out.str();
}

std::string MacroLayout::toSvg() const {
  constexpr long kSub = 10;
  constexpr long kPad = 10;
  std::map<Cell, std::vector<InstrId>> labels;
  for (const auto& [id, c] : gateLocationOf) {
    labels[c].push_back(id);
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPad + width_ * 3 * kSub
      << "\" height=\"" << 2 * kPad + height_ * 3 * kSub << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"#f4f4f4\"/>\n";
  for (const auto c : cells()) {
    const auto& b = *at(c);
    const long ox = kPad + c.x * 3 * kSub;
    const long oy = kPad + (height_ - 1 - c.y) * 3 * kSub;
    const auto square = [&](int col, int row, const char* fill) {
      out << "  <rect x=\"" << ox + col * kSub << "\" y=\"" << oy + row * kSub
          << "\" width=\"" << kSub << "\" height=\"" << kSub << "\" fill=\"" << fill << "\"/>\n";
    };
    out << "  <rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << 3 * kSub
        << "\" height=\"" << 3 * kSub << "\" fill=\"#999\"/>\n";
    square(1, 1, b.hasGateLocation() ? "black" : "white");
    if (b.ports & kNorth) {
      square(1, 0, "white");
    }
    if (b.ports & kSouth) {
      square(1, 2, "white");
    }
    if (b.ports & kWest) {
      square(0, 1, "white");
    }
    if (b.ports & kEast) {
      square(2, 1, "white");
    }
    if (const auto it = labels.find(c); it != labels.end()) {
      std::string text;
      for (const auto id : it->second) {
        text += (text.empty() ? "" : ",") + std::to_string(id);
      }
      out << "  <text x=\"" << ox + 3 * kSub / 2 << "\" y=\"" << oy + 3 * kSub / 2 + 3
          << "\" font-size=\"8\" fill=\"white\" text-anchor=\"middle\">" << text << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

nlohmann::json MacroLayout::toJson() const {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto c : cells()) {
    const auto& b = *at(c);
    blocks.push_back({{"x", c.x},
                      {"y", c.y},
                      {"kind", blockName(b.kind)},
                      {"ports", portString(b.ports)},
                      {"gate", b.hasGateLocation()}});
  }
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& [id, c] : gateLocationOf) {
    gates.push_back({{"instruction", id}, {"x", c.x}, {"y", c.y}});
  }
  return {{"width", width_}, {"height", height_}, {"blocks", std::move(blocks)},
          {"gate_locations", std::move(gates)}};
}

TiledDrawing tile(const OrthogonalDrawing& drawing) {
  for (long scale = 3; scale <= kMaxScale; scale += 2) {
    try {
      return Tiler(drawing, scale).run();
    } catch (const NeedsMoreRoom&) {
    }
  }
  throw LayoutError("no room for gate locations at any scale up to " +
                    std::to_string(kMaxScale));
}

void foldGateLocations(TiledDrawing& tiled, const Netlist& netlist,
                       const QubitFlowGraph& qfg) {
  std::vector<std::size_t> inDegree(qfg.nodeCount() + 1, 0);
  std::vector<std::vector<InstrId>> out(qfg.nodeCount() + 1);
  for (const auto& e : qfg.edges()) {
    ++inDegree[e.to];
    out[e.from].push_back(e.to);
  }
  std::set<InstrId> targets;
  for (const auto& instr : netlist.instructions()) {
    if (instr.qubits().size() != 1 || inDegree[instr.id] != 0 || out[instr.id].size() != 1) {
      continue;
    }
    const auto succ = out[instr.id].front();
    if (!targets.insert(succ).second) {
      continue;
    }
    tiled.layout.gateLocationOf[instr.id] = tiled.layout.gateLocationOf.at(succ);
  }
}

std::size_t Route::straights() const {
  return static_cast<std::size_t>(
      std::count_if(path.begin(), path.end(), [](const Traversal& t) { return !t.turn; }));
}

std::size_t Route::turns() const { return path.size() - straights(); }

const Route* RoutePlan::find(Qubit q, InstrId to) const {
  for (const auto& r : routes) {
    if (r.qubit == q && r.to == to) {
      return &r;
    }
  }
  return nullptr;
}

std::vector<Traversal> tagPath(const std::vector<Cell>& cells) {
  std::vector<Traversal> out;
  for (std::size_t k = 1; k < cells.size(); ++k) {
    const auto in = directionBetween(cells[k - 1], cells[k]);
    const auto outDir = k + 1 < cells.size() ? directionBetween(cells[k], cells[k + 1]) : in;
    out.push_back({cells[k], in != outDir});
  }
  return out;
}

namespace {

std::vector<Cell> shortestPath(const MacroLayout& layout, Cell from, Cell to) {
  std::map<Cell, Cell> parent{{from, from}};
  std::deque<Cell> queue{from};
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    if (c == to) {
      break;
    }
    for (const auto n : layout.neighbors(c)) {
      if (parent.emplace(n, c).second) {
        queue.push_back(n);
      }
    }
  }
  if (!parent.contains(to)) {
    throw LayoutError("no channel path from " + show(from) + " to " + show(to));
  }
  std::vector<Cell> path{to};
  while (path.back() != from) {
    path.push_back(parent.at(path.back()));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

/// Nearest cell by channel distance passing `accept`, BFS in port order.
std::optional<Cell> nearest(const MacroLayout& layout, Cell from,
                            const std::function<bool(Cell)>& accept) {
  std::set<Cell> seen{from};
  std::deque<Cell> queue{from};
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    if (accept(c)) {
      return c;
    }
    for (const auto n : layout.neighbors(c)) {
      if (seen.insert(n).second) {
        queue.push_back(n);
      }
    }
  }
  return std::nullopt;
}

} // namespace

void reserveIdleCells(MacroLayout& layout, const Netlist& netlist) {
  const auto cells = layout.cells();
  const auto spare = cells.size() - layout.gateCells().size();
  if (spare >= netlist.qubitCount()) {
    return;
  }
  const auto length = std::max<long>(2, static_cast<long>(netlist.qubitCount() - spare));
  MacroLayout grown(std::max(layout.width(), length + 2 * kMargin), layout.height() + 2);
  for (const auto c : cells) {
    grown.set(c, *layout.at(c));
  }
  grown.gateLocationOf = layout.gateLocationOf;
  const long y = layout.height() + 1;
  for (long k = 0; k < length; ++k) {
    Macroblock b;
    b.ports = (k > 0 ? kWest : 0) | (k + 1 < length ? kEast : 0);
    b.kind = std::popcount(b.ports) == 1 ? BlockKind::DeadEnd : BlockKind::StraightH;
    grown.set({kMargin + k, y}, b);
  }
  layout = std::move(grown);
}

PlacementResult placeQubits(const Netlist& netlist, const Schedule& schedule,
                            const MacroLayout& layout) {
  PlacementResult result;
  std::set<Cell> taken;
  std::set<Cell> gateCells;
  for (const auto& [id, c] : layout.gateLocationOf) {
    gateCells.insert(c);
  }
  struct FirstUse {
    std::size_t stage;
    InstrId id;
    std::size_t operand;
    Qubit qubit;
    auto operator<=>(const FirstUse&) const = default;
  };
  std::vector<FirstUse> order;
  for (const auto& [q, ids] : commonQubitTable(netlist)) {
    InstrId first = ids.front();
    for (const auto id : ids) {
      if (std::pair{schedule.stageOf(id), id} < std::pair{schedule.stageOf(first), first}) {
        first = id;
      }
    }
    const auto operands = netlist.at(first).qubits();
    const auto pos = static_cast<std::size_t>(
        std::find(operands.begin(), operands.end(), q) - operands.begin());
    order.push_back({schedule.stageOf(first), first, pos, q});
  }
  std::sort(order.begin(), order.end());

  for (const auto& use : order) {
    const auto target = layout.gateLocationOf.at(use.id);
    if (!taken.contains(target)) {
      result.placement.cell[use.qubit] = target;
      taken.insert(target);
      continue;
    }
    auto spot = nearest(layout, target, [&](Cell c) {
      return !taken.contains(c) && !gateCells.contains(c);
    });
    if (!spot) {
      spot = nearest(layout, target, [&](Cell c) { return !taken.contains(c); });
    }
    if (!spot) {
      throw LayoutError("no free cell near the gate of qubit " + std::to_string(use.qubit));
    }
    result.placement.cell[use.qubit] = *spot;
    taken.insert(*spot);
    Route move;
    move.qubit = use.qubit;
    move.from = 0;
    move.to = use.id;
    move.path = tagPath(shortestPath(layout, *spot, target));
    result.initialMoves.push_back(std::move(move));
  }

  const auto used = commonQubitTable(netlist);
  auto idle = layout.cells();
  std::stable_sort(idle.begin(), idle.end(), [](Cell a, Cell b) {
    return std::tuple{a.x + a.y, a.x} < std::tuple{b.x + b.y, b.x};
  });
  for (Qubit q = 0; q < netlist.qubitCount(); ++q) {
    if (used.contains(q)) {
      continue;
    }
    auto it = std::find_if(idle.begin(), idle.end(), [&](Cell c) {
      return !taken.contains(c) && !gateCells.contains(c);
    });
    if (it == idle.end()) {
      it = std::find_if(idle.begin(), idle.end(), [&](Cell c) { return !taken.contains(c); });
    }
    if (it == idle.end()) {
      throw LayoutError("no idle cell for qubit " + std::to_string(q));
    }
    result.placement.cell[q] = *it;
    taken.insert(*it);
  }
  return result;
}

RoutePlan route(const QubitFlowGraph& qfg, const TiledDrawing& tiled,
                const PlacementResult& placement) {
  const auto& layout = tiled.layout;
  RoutePlan plan;
  for (std::size_t k = 0; k < qfg.edges().size(); ++k) {
    const auto& e = qfg.edges()[k];
    Route r;
    r.qubit = e.qubit;
    r.from = e.from;
    r.to = e.to;
    const auto start = layout.gateLocationOf.at(e.from);
    const auto end = layout.gateLocationOf.at(e.to);
    if (start != end) {
      auto body = tiled.edgeCells.at(k);
      if (!body.empty() && body.front() != tiled.nodeCell.at(e.from)) {
        std::reverse(body.begin(), body.end());
      }
      std::vector<Cell> raw{start, tiled.nodeCell.at(e.from)};
      raw.insert(raw.end(), body.begin(), body.end());
      raw.push_back(tiled.nodeCell.at(e.to));
      raw.push_back(end);
      std::vector<Cell> cells;
      for (const auto c : raw) {
        if (!cells.empty() && cells.back() == c) {
          continue;
        }
        if (cells.size() >= 2 && cells[cells.size() - 2] == c) {
          cells.pop_back();
          continue;
        }
        cells.push_back(c);
      }
      for (std::size_t i = 1; i < cells.size(); ++i) {
        if (!layout.connected(cells[i - 1], cells[i])) {
          throw LayoutError("route for qubit " + std::to_string(e.qubit) +
                            " breaks between " + show(cells[i - 1]) + " and " + show(cells[i]));
        }
      }
      r.path = tagPath(cells);
    }
    plan.routes.push_back(std::move(r));
  }
  for (const auto& m : placement.initialMoves) {
    plan.routes.push_back(m);
  }
  for (const auto& r : plan.routes) {
    if (!r.path.empty()) {
      plan.movers[r.to].push_back(r.qubit);
    }
  }
  for (auto& [id, qs] : plan.movers) {
    std::sort(qs.begin(), qs.end());
  }
  return plan;
}

std::vector<std::string> checkRoutes(const MacroLayout& layout, const RoutePlan& plan,
                                     const InitialPlacement& placement) {
  std::vector<std::string> problems;
  for (const auto& r : plan.routes) {
    const auto tag = "route q" + std::to_string(r.qubit) + " " + std::to_string(r.from) +
                     "->" + std::to_string(r.to);
    std::optional<Cell> start;
    if (r.from == 0) {
      if (const auto it = placement.cell.find(r.qubit); it != placement.cell.end()) {
        start = it->second;
      }
    } else if (const auto it = layout.gateLocationOf.find(r.from);
               it != layout.gateLocationOf.end()) {
      start = it->second;
    }
    const auto endIt = layout.gateLocationOf.find(r.to);
    if (!start || endIt == layout.gateLocationOf.end()) {
      problems.push_back(tag + ": endpoint without a location");
      continue;
    }
    auto cur = *start;
    std::vector<Cell> cells{cur};
    for (const auto& t : r.path) {
      if (!layout.connected(cur, t.cell)) {
        problems.push_back(tag + ": no shared port between " + show(cur) + " and " +
                           show(t.cell));
      }
      cur = t.cell;
      cells.push_back(cur);
    }
    if (cur != endIt->second) {
      problems.push_back(tag + ": ends at " + show(cur) + " instead of " + show(endIt->second));
    }
    const auto expected = tagPath(cells);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (expected[k].turn != r.path[k].turn) {
        problems.push_back(tag + ": wrong tag at " + show(r.path[k].cell));
      }
    }
  }
  return problems;
}

nlohmann::json placementToJson(const InitialPlacement& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [q, c] : p.cell) {
    out.push_back({{"qubit", q}, {"x", c.x}, {"y", c.y}});
  }
  return out;
}

nlohmann::json routesToJson(const RoutePlan& plan) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : plan.routes) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& t : r.path) {
      path.push_back({{"x", t.cell.x}, {"y", t.cell.y}, {"turn", t.turn}});
    }
    out.push_back({{"qubit", r.qubit},
                   {"from", r.from},
                   {"to", r.to},
                   {"straights", r.straights()},
                   {"turns", r.turns()},
                   {"path", std::move(path)}});
  }
  return out;
}

} // namespace trapflow
