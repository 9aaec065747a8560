// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Dependency.hpp"
#include "trapflow/Netlist.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trapflow {

/// Binary variable x_i(l): instruction i executes in stage l.
struct IlpVariable {
  InstrId instruction = 0;
  std::size_t stage = 0;
};

enum class Relation : std::uint8_t { Equal, LessEqual };

struct IlpTerm {
  std::size_t variable = 0;
  long coefficient = 0;
};

struct IlpConstraint {
  /// 1: execute exactly once, 2: qubit exclusion, 3: data dependency.
  int series = 0;
  std::vector<IlpTerm> terms;
  Relation relation = Relation::Equal;
  long rhs = 0;
};

struct IlpModel {
  std::size_t horizon = 0;
  std::size_t instructionCount = 0;
  std::vector<IlpVariable> variables;
  std::vector<IlpConstraint> constraints;

  [[nodiscard]] std::optional<std::size_t> variableIndex(InstrId id,
                                                         std::size_t stage) const;
  [[nodiscard]] std::size_t countSeries(int series) const;
  /// CPLEX-LP text with `x_<i>_<l>` variable names and one comment-headed
  /// block per constraint series.
  [[nodiscard]] std::string toLpText() const;
};

/// Emits the three constraint series for the given windows. Dependencies
/// are taken from the transitive reduction of `graph`.
[[nodiscard]] IlpModel emitIlp(const Netlist& netlist,
                               const DataflowGraph& graph,
                               const ScheduleWindow& windows);

class Schedule {
public:
  Schedule() = default;
  /// stageOf[id - 1] is the 1-based stage of instruction id.
  Schedule(std::size_t horizon, std::vector<std::size_t> stageOf);

  [[nodiscard]] std::size_t horizon() const { return horizon_; }
  [[nodiscard]] std::size_t size() const { return stageOf_.size(); }
  [[nodiscard]] std::size_t stageOf(InstrId id) const {
    return stageOf_.at(id - 1);
  }
  [[nodiscard]] const std::vector<std::size_t>& stageVector() const {
    return stageOf_;
  }
  /// Highest occupied stage.
  [[nodiscard]] std::size_t stageCount() const;
  /// Instruction ids per stage; index 0 is stage 1.
  [[nodiscard]] std::vector<std::vector<InstrId>> stages() const;

  [[nodiscard]] nlohmann::json toJson() const;
  static Schedule fromJson(const nlohmann::json& j, std::size_t instructionCount);

  bool operator==(const Schedule&) const = default;

private:
  std::size_t horizon_ = 0;
  std::vector<std::size_t> stageOf_;
};

struct SolverOptions {
  std::uint64_t nodeBudget = 5'000'000;
  std::chrono::duration<double> timeBudget{120.0};
  /// Keep searching after the first feasible point for the smallest stage
  /// sum. Ties resolve to the lexicographically smallest stage vector.
  bool minimizeStageSum = true;
};

enum class SolveStatus : std::uint8_t { Optimal, Feasible, Infeasible, BudgetExhausted };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Schedule> schedule;
  std::uint64_t nodesExplored = 0;
};

/// Branch and bound over the model's one-hot groups in emission order with
/// ascending stage values, unit propagation and bounds propagation on the
/// dependency rows. Deterministic for a fixed model and node budget.
[[nodiscard]] SolveResult solve(const IlpModel& model,
                                const SolverOptions& options = {});

class SchedulingError : public std::runtime_error {
public:
  SchedulingError(const std::string& message, std::uint64_t nodes)
      : std::runtime_error(message), nodes_(nodes) {}
  [[nodiscard]] std::uint64_t nodesExplored() const { return nodes_; }

private:
  std::uint64_t nodes_;
};

struct ScheduleOutcome {
  Schedule schedule;
  std::size_t lowerBound = 0;
  std::vector<std::size_t> horizonsTried;
  std::uint64_t nodesExplored = 0;
  bool provenCanonical = true;
};

/// Starts at the stage lower bound and increments the horizon until the
/// model is feasible. Throws SchedulingError when the solver budget runs out.
[[nodiscard]] ScheduleOutcome scheduleNetlist(const Netlist& netlist,
                                              const SolverOptions& options = {});

struct Violation {
  int series = 0;
  std::vector<InstrId> instructions;
  std::string message;
};

[[nodiscard]] std::vector<Violation> validate(const Netlist& netlist,
                                              const DataflowGraph& graph,
                                              const Schedule& schedule);

/// Exhaustive minimum stage count, pruning only on partial validity.
/// Limited to 12 instructions.
[[nodiscard]] std::size_t oracleMinStages(const Netlist& netlist,
                                          const DataflowGraph& graph);

} // namespace trapflow
