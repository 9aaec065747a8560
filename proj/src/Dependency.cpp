// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Dependency.hpp"

#include <algorithm>
#include <sstream>

namespace trapflow {

namespace {

bool contains(const std::vector<Qubit>& set, Qubit q) {
  return std::find(set.begin(), set.end(), q) != set.end();
}

bool shareQubit(const Instruction& a, const Instruction& b) {
  for (const auto q : a.qubits()) {
    if (b.touches(q)) {
      return true;
    }
  }
  return false;
}

bool isDiagonal(GateKind kind) {
  return kind == GateKind::T || kind == GateKind::Tdg || kind == GateKind::S;
}

bool singleQubitGatesCommute(GateKind a, GateKind b) {
  return a == b || (isDiagonal(a) && isDiagonal(b));
}

} // namespace

bool exchangeable(const Instruction& a, const Instruction& b) {
  if (!shareQubit(a, b)) {
    return true;
  }
  const auto isMeasurement = [](GateKind k) {
    return k == GateKind::Measure || k == GateKind::PrepZ;
  };
  if (isMeasurement(a.kind) || isMeasurement(b.kind)) {
    return false;
  }
  if (a.controls.empty() && b.controls.empty()) {
    // Both single-qubit and sharing a qubit, so they act on the same wire.
    return singleQubitGatesCommute(a.kind, b.kind);
  }
  const bool targetsClear =
      !contains(b.controls, a.target) && !contains(a.controls, b.target);
  if (a.kind == b.kind) {
    return targetsClear;
  }
  return targetsClear && a.target != b.target;
}

std::map<Qubit, std::vector<InstrId>> commonQubitTable(const Netlist& netlist) {
  std::map<Qubit, std::vector<InstrId>> table;
  for (const auto& instr : netlist.instructions()) {
    for (const auto q : instr.qubits()) {
      table[q].push_back(instr.id);
    }
  }
  return table;
}

DataflowGraph::DataflowGraph(std::size_t nodeCount)
    : preds_(nodeCount), succs_(nodeCount) {}

void DataflowGraph::addEdge(InstrId from, InstrId to) {
  if (from == 0 || to == 0 || from > nodeCount() || to > nodeCount()) {
    throw std::out_of_range("dataflow edge endpoint out of range");
  }
  if (from >= to) {
    throw std::invalid_argument("dataflow edges must point forward");
  }
  succs_[from - 1].insert(to);
  preds_[to - 1].insert(from);
}

std::size_t DataflowGraph::edgeCount() const {
  std::size_t count = 0;
  for (const auto& s : succs_) {
    count += s.size();
  }
  return count;
}

bool DataflowGraph::hasEdge(InstrId from, InstrId to) const {
  return from >= 1 && from <= nodeCount() && succs_[from - 1].contains(to);
}

const std::set<InstrId>& DataflowGraph::predecessors(InstrId id) const {
  return preds_.at(id - 1);
}

const std::set<InstrId>& DataflowGraph::successors(InstrId id) const {
  return succs_.at(id - 1);
}

std::vector<std::pair<InstrId, InstrId>> DataflowGraph::edges() const {
  std::vector<std::pair<InstrId, InstrId>> out;
  for (std::size_t k = 0; k < succs_.size(); ++k) {
    for (const auto to : succs_[k]) {
      out.emplace_back(static_cast<InstrId>(k + 1), to);
    }
  }
  return out;
}

bool DataflowGraph::reaches(InstrId from, InstrId to) const {
  if (from >= to) {
    return false;
  }
  // Ids are a topological order, so a forward sweep suffices.
  std::vector<bool> seen(nodeCount() + 1, false);
  seen[from] = true;
  for (InstrId v = from; v < to; ++v) {
    if (!seen[v]) {
      continue;
    }
    for (const auto s : successors(v)) {
      if (s == to) {
        return true;
      }
      if (s < to) {
        seen[s] = true;
      }
    }
  }
  return false;
}

std::size_t DataflowGraph::criticalPathLength() const {
  std::vector<std::size_t> depth(nodeCount(), 1);
  std::size_t best = 0;
  for (std::size_t k = 0; k < nodeCount(); ++k) {
    for (const auto p : preds_[k]) {
      depth[k] = std::max(depth[k], depth[p - 1] + 1);
    }
    best = std::max(best, depth[k]);
  }
  return best;
}

DataflowGraph DataflowGraph::transitiveReduction() const {
  DataflowGraph reduced(nodeCount());
  for (const auto& [from, to] : edges()) {
    bool redundant = false;
    for (const auto mid : successors(from)) {
      if (mid != to && mid < to && reaches(mid, to)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) {
      reduced.addEdge(from, to);
    }
  }
  return reduced;
}

std::string DataflowGraph::toDot() const {
  std::ostringstream out;
  out << "digraph dataflow {\n  rankdir=TB;\n";
  for (std::size_t k = 1; k <= nodeCount(); ++k) {
    out << "  n" << k << " [label=\"" << k << "\"];\n";
  }
  for (const auto& [from, to] : edges()) {
    out << "  n" << from << " -> n" << to << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json DataflowGraph::toJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t k = 1; k <= nodeCount(); ++k) {
    nodes.push_back(k);
  }
  nlohmann::json edgeList = nlohmann::json::array();
  for (const auto& [from, to] : edges()) {
    edgeList.push_back({from, to});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edgeList)}};
}

DataflowGraph buildDataflow(const Netlist& netlist) {
  DataflowGraph graph(netlist.size());
  const auto& instrs = netlist.instructions();
  for (std::size_t i = 0; i < instrs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (shareQubit(instrs[j], instrs[i]) &&
          !exchangeable(instrs[j], instrs[i])) {
        graph.addEdge(instrs[j].id, instrs[i].id);
      }
    }
  }
  return graph;
}

ScheduleWindow asapAlap(const DataflowGraph& graph, std::size_t horizon) {
  const auto n = graph.nodeCount();
  const auto critical = graph.criticalPathLength();
  if (horizon < critical) {
    throw InfeasibleHorizon("horizon " + std::to_string(horizon) +
                            " is below the critical path length " +
                            std::to_string(critical));
  }
  ScheduleWindow result;
  result.horizon = horizon;
  result.windows.resize(n);
  for (InstrId id = 1; id <= n; ++id) {
    std::size_t asap = 1;
    for (const auto p : graph.predecessors(id)) {
      asap = std::max(asap, result.windows[p - 1].asap + 1);
    }
    result.windows[id - 1].asap = asap;
  }
  for (auto id = static_cast<InstrId>(n); id >= 1; --id) {
    std::size_t alap = horizon;
    for (const auto s : graph.successors(id)) {
      alap = std::min(alap, result.windows[s - 1].alap - 1);
    }
    result.windows[id - 1].alap = alap;
  }
  return result;
}

std::size_t stageLowerBound(const Netlist& netlist,
                            const DataflowGraph& graph) {
  std::size_t bound = graph.criticalPathLength();
  for (const auto& [qubit, ids] : commonQubitTable(netlist)) {
    bound = std::max(bound, ids.size());
  }
  return bound;
}

} // namespace trapflow
