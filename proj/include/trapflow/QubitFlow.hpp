// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Netlist.hpp"
#include "trapflow/Schedule.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trapflow {

struct QfgNode {
  InstrId id = 0;
  std::size_t stage = 0;
};

/// Qubit `qubit` leaves instruction `from` and is next used by `to`.
struct QfgEdge {
  InstrId from = 0;
  InstrId to = 0;
  Qubit qubit = 0;
  bool operator==(const QfgEdge&) const = default;
};

class QubitFlowGraph {
public:
  QubitFlowGraph() = default;
  /// `singleUses` lists qubits touched by exactly one instruction; they have
  /// no edges but still get timeline endpoints.
  QubitFlowGraph(std::vector<QfgNode> nodes, std::vector<QfgEdge> edges,
                 const std::vector<std::pair<Qubit, InstrId>>& singleUses = {});

  /// Nodes in id order; nodes()[k].id == k + 1.
  [[nodiscard]] const std::vector<QfgNode>& nodes() const { return nodes_; }
  /// Edges grouped by qubit, each group in timeline order.
  [[nodiscard]] const std::vector<QfgEdge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t nodeCount() const { return nodes_.size(); }
  [[nodiscard]] std::size_t stageOf(InstrId id) const { return nodes_.at(id - 1).stage; }
  [[nodiscard]] std::size_t degree(InstrId id) const;
  /// Timeline endpoints per used qubit.
  [[nodiscard]] const std::map<Qubit, InstrId>& firstUse() const { return first_; }
  [[nodiscard]] const std::map<Qubit, InstrId>& lastUse() const { return last_; }
  /// Edge indices on `q`'s timeline in order.
  [[nodiscard]] std::vector<std::size_t> timeline(Qubit q) const;

  /// DOT with one rank per stage.
  [[nodiscard]] std::string toDot() const;
  [[nodiscard]] nlohmann::json toJson() const;

private:
  std::vector<QfgNode> nodes_;
  std::vector<QfgEdge> edges_;
  std::vector<std::size_t> degree_;
  std::map<Qubit, InstrId> first_;
  std::map<Qubit, InstrId> last_;
};

class InvalidSchedule : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Links consecutive uses of every qubit under the schedule. Throws
/// InvalidSchedule when the schedule fails validation.
[[nodiscard]] QubitFlowGraph buildQfg(const Netlist& netlist, const Schedule& schedule);

/// True iff every node has degree at most 4.
[[nodiscard]] bool qfgDegreeCheck(const QubitFlowGraph& g);

} // namespace trapflow
