// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Latency.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace trapflow {

double LatencyModel::gateCost(GateKind kind) const {
  if (kind == GateKind::Measure) {
    return measurement;
  }
  if (kind == GateKind::PrepZ) {
    return zeroPrepare;
  }
  return arity(kind) >= 2 ? twoQubitGate : oneQubitGate;
}

double LatencyModel::moveCost(std::size_t straights, std::size_t turns) const {
  return static_cast<double>(3 * straights) * straightMove + static_cast<double>(turns) * turn;
}

nlohmann::json LatencyModel::toJson() const {
  return {{"one_qubit_gate", oneQubitGate}, {"two_qubit_gate", twoQubitGate},
          {"measurement", measurement},     {"zero_prepare", zeroPrepare},
          {"straight_move", straightMove},  {"turn", turn}};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

LatencyModel parseLatencyModel(std::string_view text) {
  LatencyModel model;
  const std::map<std::string_view, double LatencyModel::*> fields{
      {"one_qubit_gate", &LatencyModel::oneQubitGate},
      {"two_qubit_gate", &LatencyModel::twoQubitGate},
      {"measurement", &LatencyModel::measurement},
      {"zero_prepare", &LatencyModel::zeroPrepare},
      {"straight_move", &LatencyModel::straightMove},
      {"turn", &LatencyModel::turn}};
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto where = "line " + std::to_string(lineNo) + ": ";
    const auto sep = line.find_first_of("=:");
    if (sep == std::string_view::npos) {
      throw ConfigError(where + "expected key = value");
    }
    const auto key = trim(line.substr(0, sep));
    const auto value = trim(line.substr(sep + 1));
    const auto field = fields.find(key);
    if (field == fields.end()) {
      throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    }
    double v = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size()) {
      throw ConfigError(where + "malformed number '" + std::string(value) + "'");
    }
    if (!(v > 0)) {
      throw ConfigError(where + std::string(key) + " must be positive");
    }
    model.*(field->second) = v;
  }
  return model;
}

LatencyModel loadLatencyModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseLatencyModel(buf.str());
}

double LatencyReport::congestionDelay() const {
  double d = 0;
  for (const auto& m : movements) {
    d += m.delay;
  }
  return d;
}

nlohmann::json LatencyReport::toJson() const {
  nlohmann::json instrs = nlohmann::json::array();
  for (const auto& t : instructions) {
    instrs.push_back({{"id", t.id}, {"start", t.start}, {"finish", t.finish}});
  }
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : movements) {
    moves.push_back({{"qubit", m.qubit},
                     {"edge", {m.from, m.to}},
                     {"straights", m.straights},
                     {"turns", m.turns},
                     {"delay", m.delay},
                     {"duration", m.duration}});
  }
  return {{"total_us", total},
          {"congestion_delay_us", congestionDelay()},
          {"instructions", std::move(instrs)},
          {"movements", std::move(moves)}};
}

LatencyReport simulate(const Netlist& netlist, const Schedule& schedule,
                       const MacroLayout& layout, const RoutePlan& plan,
                       const InitialPlacement& placement, const LatencyModel& model) {
  if (schedule.size() != netlist.size()) {
    throw LatencyError("schedule covers " + std::to_string(schedule.size()) + " of " +
                       std::to_string(netlist.size()) + " instructions");
  }
  std::vector<InstrId> order;
  for (const auto& instr : netlist.instructions()) {
    order.push_back(instr.id);
  }
  std::sort(order.begin(), order.end(), [&](InstrId a, InstrId b) {
    return std::pair{schedule.stageOf(a), a} < std::pair{schedule.stageOf(b), b};
  });

  std::map<Qubit, double> ready;
  std::map<Qubit, Cell> at;
  std::map<Cell, double> cellFree;
  LatencyReport report;
  report.instructions.resize(netlist.size());

  for (const auto id : order) {
    const auto& instr = netlist.at(id);
    const auto loc = layout.gateLocationOf.find(id);
    if (loc == layout.gateLocationOf.end()) {
      throw LatencyError("instruction " + std::to_string(id) + " has no gate location");
    }
    double start = cellFree[loc->second];
    for (const auto q : instr.qubits()) {
      if (!at.contains(q)) {
        const auto p = placement.cell.find(q);
        if (p == placement.cell.end()) {
          throw LatencyError("qubit " + std::to_string(q) + " has no placement");
        }
        at[q] = p->second;
        ready[q] = 0;
      }
      double t = ready[q];
      const auto* r = plan.find(q, id);
      if (at[q] != loc->second && (r == nullptr || r->path.empty())) {
        throw LatencyError("qubit " + std::to_string(q) + " has no route to instruction " +
                           std::to_string(id));
      }
      if (r != nullptr && !r->path.empty()) {
        Movement m{q, r->from, id, r->straights(), r->turns(), 0,
                   model.moveCost(r->straights(), r->turns())};
        for (std::size_t k = 0; k < r->path.size(); ++k) {
          const auto& step = r->path[k];
          const double cost = step.turn ? model.turn : 3 * model.straightMove;
          if (k + 1 == r->path.size()) {
            t += cost;
            break;
          }
          auto& free = cellFree[step.cell];
          const double enter = std::max(t, free);
          m.delay += enter - t;
          t = enter + cost;
          free = t;
        }
        report.movements.push_back(m);
      }
      at[q] = loc->second;
      start = std::max(start, t);
    }
    const double finish = start + model.gateCost(instr.kind);
    cellFree[loc->second] = finish;
    for (const auto q : instr.qubits()) {
      ready[q] = finish;
    }
    report.instructions[id - 1] = {id, start, finish};
    report.total = std::max(report.total, finish);
  }
  return report;
}

double catLatencyFormula(std::size_t n, const LatencyModel& model) {
  if (n < 2) {
    throw std::invalid_argument("cat state needs n >= 2");
  }
  const auto half = static_cast<double>(n % 2 == 1 ? (n - 1) / 2 : n / 2);
  return model.oneQubitGate + 2 * model.turn + (half + 2) * model.twoQubitGate +
         (half + 4) * 3 * model.straightMove;
}

} // namespace trapflow
