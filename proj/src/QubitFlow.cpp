// SPDX-License-Identifier: Apache-2.0

#include "trapflow/QubitFlow.hpp"

#include "trapflow/Dependency.hpp"

#include <algorithm>
#include <sstream>

namespace trapflow {

QubitFlowGraph::QubitFlowGraph(std::vector<QfgNode> nodes, std::vector<QfgEdge> edges,
                               const std::vector<std::pair<Qubit, InstrId>>& singleUses)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), degree_(nodes_.size(), 0) {
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].id != k + 1) {
      throw std::invalid_argument("qfg nodes must be numbered 1..n in order");
    }
  }
  for (const auto& e : edges_) {
    if (e.from == 0 || e.to == 0 || e.from > nodes_.size() || e.to > nodes_.size() ||
        e.from == e.to) {
      throw std::invalid_argument("qfg edge endpoint out of range");
    }
    ++degree_[e.from - 1];
    ++degree_[e.to - 1];
    if (!first_.contains(e.qubit) || stageOf(first_[e.qubit]) > stageOf(e.from)) {
      first_[e.qubit] = e.from;
    }
    if (!last_.contains(e.qubit) || stageOf(last_[e.qubit]) < stageOf(e.to)) {
      last_[e.qubit] = e.to;
    }
  }
  for (const auto& [q, id] : singleUses) {
    if (id == 0 || id > nodes_.size() || first_.contains(q)) {
      throw std::invalid_argument("bad single-use qubit entry");
    }
    first_[q] = id;
    last_[q] = id;
  }
}

std::size_t QubitFlowGraph::degree(InstrId id) const { return degree_.at(id - 1); }

std::vector<std::size_t> QubitFlowGraph::timeline(Qubit q) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k].qubit == q) {
      out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end(), [this](std::size_t a, std::size_t b) {
    return stageOf(edges_[a].from) < stageOf(edges_[b].from);
  });
  return out;
}

std::string QubitFlowGraph::toDot() const {
  std::ostringstream out;
  out << "digraph qfg {\n  rankdir=TB;\n";
  std::map<std::size_t, std::vector<InstrId>> ranks;
  for (const auto& n : nodes_) {
    ranks[n.stage].push_back(n.id);
  }
  for (const auto& [stage, ids] : ranks) {
    out << "  { rank=same;";
    for (const auto id : ids) {
      out << " n" << id << ";";
    }
    out << " }\n";
  }
  for (const auto& n : nodes_) {
    out << "  n" << n.id << " [label=\"" << n.id << "\\nstage " << n.stage << "\"];\n";
  }
  for (const auto& e : edges_) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"q" << e.qubit << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json QubitFlowGraph::toJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back({{"id", n.id}, {"stage", n.stage}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"qubit", e.qubit}});
  }
  nlohmann::json qubits = nlohmann::json::array();
  for (const auto& [q, id] : first_) {
    qubits.push_back({{"qubit", q}, {"first", id}, {"last", last_.at(q)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"qubits", std::move(qubits)}};
}

QubitFlowGraph buildQfg(const Netlist& netlist, const Schedule& schedule) {
  const auto violations = validate(netlist, buildDataflow(netlist), schedule);
  if (!violations.empty()) {
    throw InvalidSchedule("schedule is invalid: " + violations.front().message);
  }
  std::vector<QfgNode> nodes;
  nodes.reserve(netlist.size());
  for (const auto& instr : netlist.instructions()) {
    nodes.push_back({instr.id, schedule.stageOf(instr.id)});
  }
  std::vector<QfgEdge> edges;
  std::vector<std::pair<Qubit, InstrId>> singles;
  for (const auto& [qubit, ids] : commonQubitTable(netlist)) {
    auto ordered = ids;
    std::stable_sort(ordered.begin(), ordered.end(), [&](InstrId a, InstrId b) {
      return schedule.stageOf(a) < schedule.stageOf(b);
    });
    for (std::size_t k = 1; k < ordered.size(); ++k) {
      edges.push_back({ordered[k - 1], ordered[k], qubit});
    }
    if (ordered.size() == 1) {
      singles.emplace_back(qubit, ordered.front());
    }
  }
  return {std::move(nodes), std::move(edges), singles};
}

bool qfgDegreeCheck(const QubitFlowGraph& g) {
  for (const auto& n : g.nodes()) {
    if (g.degree(n.id) > 4) {
      return false;
    }
  }
  return true;
}

} // namespace trapflow
