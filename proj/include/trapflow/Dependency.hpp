// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Netlist.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trapflow {

/// True iff the two gates may execute in either order without changing the
/// circuit. Controlled gates follow the control/target exchange rule;
/// single-qubit gates on a common wire are exchangeable iff their matrices
/// commute; Measure/PrepZ never exchange with a gate on a shared qubit.
[[nodiscard]] bool exchangeable(const Instruction& a, const Instruction& b);

/// qubit -> ids of every instruction touching it, in netlist order. Qubits
/// that are never used are absent.
[[nodiscard]] std::map<Qubit, std::vector<InstrId>>
commonQubitTable(const Netlist& netlist);

/// DAG over instruction ids 1..n. An edge j -> i means i depends on j; j < i
/// always holds.
class DataflowGraph {
public:
  DataflowGraph() = default;
  explicit DataflowGraph(std::size_t nodeCount);

  void addEdge(InstrId from, InstrId to);
  [[nodiscard]] std::size_t nodeCount() const { return preds_.size(); }
  [[nodiscard]] std::size_t edgeCount() const;
  [[nodiscard]] bool hasEdge(InstrId from, InstrId to) const;
  [[nodiscard]] const std::set<InstrId>& predecessors(InstrId id) const;
  [[nodiscard]] const std::set<InstrId>& successors(InstrId id) const;
  [[nodiscard]] std::vector<std::pair<InstrId, InstrId>> edges() const;
  /// Whether `to` is reachable from `from` along one or more edges.
  [[nodiscard]] bool reaches(InstrId from, InstrId to) const;
  /// Number of nodes on the longest path (0 for an empty graph).
  [[nodiscard]] std::size_t criticalPathLength() const;
  /// Same reachability with every transitive edge removed.
  [[nodiscard]] DataflowGraph transitiveReduction() const;

  [[nodiscard]] std::string toDot() const;
  [[nodiscard]] nlohmann::json toJson() const;

private:
  std::vector<std::set<InstrId>> preds_;
  std::vector<std::set<InstrId>> succs_;
};

/// Edge j -> i for every earlier j that shares a qubit with i and is not
/// exchangeable with it. Transitive edges are kept.
[[nodiscard]] DataflowGraph buildDataflow(const Netlist& netlist);

struct StageWindow {
  std::size_t asap = 0;
  std::size_t alap = 0;
  [[nodiscard]] std::size_t slack() const { return alap - asap; }
};

/// Per-instruction ASAP/ALAP windows at a fixed horizon; index = id - 1.
struct ScheduleWindow {
  std::size_t horizon = 0;
  std::vector<StageWindow> windows;

  [[nodiscard]] const StageWindow& of(InstrId id) const {
    return windows.at(id - 1);
  }
};

class InfeasibleHorizon : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Throws InfeasibleHorizon when the horizon is below the critical path.
[[nodiscard]] ScheduleWindow asapAlap(const DataflowGraph& graph,
                                      std::size_t horizon);

/// max(largest common-qubit row, critical path length).
[[nodiscard]] std::size_t stageLowerBound(const Netlist& netlist,
                                          const DataflowGraph& graph);

} // namespace trapflow
