// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Layout.hpp"
#include "trapflow/Netlist.hpp"
#include "trapflow/Schedule.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trapflow {

/// Operation costs in microseconds.
struct LatencyModel {
  double oneQubitGate = 1;
  double twoQubitGate = 10;
  double measurement = 50;
  double zeroPrepare = 51;
  double straightMove = 1;
  double turn = 10;

  /// Gates on two or more qubits cost twoQubitGate.
  [[nodiscard]] double gateCost(GateKind kind) const;
  /// One macroblock crossed straight is three straight-move units.
  [[nodiscard]] double moveCost(std::size_t straights, std::size_t turns) const;
  [[nodiscard]] nlohmann::json toJson() const;
  bool operator==(const LatencyModel&) const = default;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` or `key: value` lines; `#` starts a comment.
[[nodiscard]] LatencyModel parseLatencyModel(std::string_view text);
[[nodiscard]] LatencyModel loadLatencyModel(const std::filesystem::path& path);

struct InstructionTiming {
  InstrId id = 0;
  double start = 0;
  double finish = 0;
};

struct Movement {
  Qubit qubit = 0;
  InstrId from = 0;
  InstrId to = 0;
  std::size_t straights = 0;
  std::size_t turns = 0;
  /// Time spent waiting for occupied cells.
  double delay = 0;
  /// Travel time without waiting.
  double duration = 0;
};

struct LatencyReport {
  double total = 0;
  /// In instruction id order.
  std::vector<InstructionTiming> instructions;
  std::vector<Movement> movements;

  [[nodiscard]] double congestionDelay() const;
  [[nodiscard]] nlohmann::json toJson() const;
};

class LatencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Instructions are processed in (stage, id) order. Each qubit leaves when
/// its previous instruction finishes and follows its route; a route cell is
/// held from entry to exit and a later claimant waits. The destination cell
/// is held only by the gate that executes there.
[[nodiscard]] LatencyReport simulate(const Netlist& netlist, const Schedule& schedule,
                                     const MacroLayout& layout, const RoutePlan& plan,
                                     const InitialPlacement& placement,
                                     const LatencyModel& model = {});

/// Closed-form cat-state latency. Throws std::invalid_argument for n < 2.
[[nodiscard]] double catLatencyFormula(std::size_t n, const LatencyModel& model = {});

} // namespace trapflow
