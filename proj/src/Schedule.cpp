// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Schedule.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace trapflow {

// ---------------------------------------------------------------------------
// Model emission
// ---------------------------------------------------------------------------

std::optional<std::size_t> IlpModel::variableIndex(InstrId id,
                                                   std::size_t stage) const {
  for (std::size_t v = 0; v < variables.size(); ++v) {
    if (variables[v].instruction == id && variables[v].stage == stage) {
      return v;
    }
  }
  return std::nullopt;
}

std::size_t IlpModel::countSeries(int series) const {
  return static_cast<std::size_t>(
      std::count_if(constraints.begin(), constraints.end(),
                    [series](const auto& c) { return c.series == series; }));
}

std::string IlpModel::toLpText() const {
  std::ostringstream out;
  const auto name = [this](std::size_t v) {
    return "x_" + std::to_string(variables[v].instruction) + "_" +
           std::to_string(variables[v].stage);
  };
  out << "\\ stage scheduling model, horizon " << horizon << "\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (std::size_t v = 0; v < variables.size(); ++v) {
    out << (first ? " " : " + ") << variables[v].stage << " " << name(v);
    first = false;
  }
  if (variables.empty()) {
    out << " 0";
  }
  out << "\nSubject To\n";
  const char* headers[] = {"", "\\ series 1: each instruction executes exactly once",
                           "\\ series 2: instructions sharing a qubit are exclusive per stage",
                           "\\ series 3: data dependencies"};
  for (int series = 1; series <= 3; ++series) {
    out << headers[series] << "\n";
    std::size_t k = 0;
    for (const auto& c : constraints) {
      if (c.series != series) {
        continue;
      }
      out << " s" << series << "_" << ++k << ":";
      for (std::size_t t = 0; t < c.terms.size(); ++t) {
        const auto coef = c.terms[t].coefficient;
        if (t == 0) {
          out << (coef < 0 ? " - " : " ");
        } else {
          out << (coef < 0 ? " - " : " + ");
        }
        if (std::abs(coef) != 1) {
          out << std::abs(coef) << " ";
        }
        out << name(c.terms[t].variable);
      }
      out << (c.relation == Relation::Equal ? " = " : " <= ") << c.rhs << "\n";
    }
  }
  out << "Binary\n";
  for (std::size_t v = 0; v < variables.size(); ++v) {
    out << " " << name(v) << "\n";
  }
  out << "End\n";
  return out.str();
}

IlpModel emitIlp(const Netlist& netlist, const DataflowGraph& graph,
                 const ScheduleWindow& windows) {
  IlpModel model;
  model.horizon = windows.horizon;
  model.instructionCount = netlist.size();

  // first variable index per instruction; stages are contiguous.
  std::vector<std::size_t> firstVar(netlist.size());
  for (const auto& instr : netlist.instructions()) {
    const auto& w = windows.of(instr.id);
    if (w.asap > w.alap || w.asap == 0) {
      throw InfeasibleHorizon("instruction " + std::to_string(instr.id) +
                              " has an empty stage window");
    }
    firstVar[instr.id - 1] = model.variables.size();
    for (auto l = w.asap; l <= w.alap; ++l) {
      model.variables.push_back({instr.id, l});
    }
  }
  const auto var = [&](InstrId id, std::size_t stage) {
    return firstVar[id - 1] + (stage - windows.of(id).asap);
  };

  for (const auto& instr : netlist.instructions()) {
    const auto& w = windows.of(instr.id);
    IlpConstraint c{1, {}, Relation::Equal, 1};
    for (auto l = w.asap; l <= w.alap; ++l) {
      c.terms.push_back({var(instr.id, l), 1});
    }
    model.constraints.push_back(std::move(c));
  }

  const auto& instrs = netlist.instructions();
  for (std::size_t a = 0; a < instrs.size(); ++a) {
    for (std::size_t b = a + 1; b < instrs.size(); ++b) {
      bool share = false;
      for (const auto q : instrs[a].qubits()) {
        share = share || instrs[b].touches(q);
      }
      if (!share) {
        continue;
      }
      const auto& wa = windows.of(instrs[a].id);
      const auto& wb = windows.of(instrs[b].id);
      for (auto l = std::max(wa.asap, wb.asap); l <= std::min(wa.alap, wb.alap);
           ++l) {
        model.constraints.push_back(
            {2,
             {{var(instrs[a].id, l), 1}, {var(instrs[b].id, l), 1}},
             Relation::LessEqual,
             1});
      }
    }
  }

  for (const auto& [from, to] : graph.transitiveReduction().edges()) {
    IlpConstraint c{3, {}, Relation::LessEqual, -1};
    const auto& wf = windows.of(from);
    for (auto l = wf.asap; l <= wf.alap; ++l) {
      c.terms.push_back({var(from, l), static_cast<long>(l)});
    }
    const auto& wt = windows.of(to);
    for (auto l = wt.asap; l <= wt.alap; ++l) {
      c.terms.push_back({var(to, l), -static_cast<long>(l)});
    }
    model.constraints.push_back(std::move(c));
  }
  return model;
}

// ---------------------------------------------------------------------------
// Schedule value type
// ---------------------------------------------------------------------------

Schedule::Schedule(std::size_t horizon, std::vector<std::size_t> stageOf)
    : horizon_(horizon), stageOf_(std::move(stageOf)) {}

std::size_t Schedule::stageCount() const {
  return stageOf_.empty() ? 0
                          : *std::max_element(stageOf_.begin(), stageOf_.end());
}

std::vector<std::vector<InstrId>> Schedule::stages() const {
  std::vector<std::vector<InstrId>> out(std::max(horizon_, stageCount()));
  for (std::size_t k = 0; k < stageOf_.size(); ++k) {
    if (stageOf_[k] >= 1) {
      out[stageOf_[k] - 1].push_back(static_cast<InstrId>(k + 1));
    }
  }
  return out;
}

nlohmann::json Schedule::toJson() const {
  nlohmann::json stageList = nlohmann::json::array();
  const auto grouped = stages();
  for (std::size_t s = 0; s < grouped.size(); ++s) {
    stageList.push_back({{"stage", s + 1}, {"instruction_ids", grouped[s]}});
  }
  return {{"horizon", std::max(horizon_, stageCount())},
          {"stages", std::move(stageList)}};
}

Schedule Schedule::fromJson(const nlohmann::json& j,
                            std::size_t instructionCount) {
  std::vector<std::size_t> stageOf(instructionCount, 0);
  for (const auto& entry : j.at("stages")) {
    const auto stage = entry.at("stage").get<std::size_t>();
    for (const auto id : entry.at("instruction_ids").get<std::vector<InstrId>>()) {
      if (id == 0 || id > instructionCount) {
        throw std::out_of_range("schedule names unknown instruction " +
                                std::to_string(id));
      }
      if (stageOf[id - 1] != 0) {
        throw std::invalid_argument("instruction " + std::to_string(id) +
                                    " scheduled twice");
      }
      stageOf[id - 1] = stage;
    }
  }
  return {j.at("horizon").get<std::size_t>(), std::move(stageOf)};
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

namespace {

struct Precedence {
  std::size_t before = 0; // group whose value must be smaller
  std::size_t after = 0;
  std::vector<long> beforeCoef; // per position in group
  std::vector<long> afterCoef;
  long rhs = 0; // value(before) - value(after) <= rhs
};

struct Structure {
  std::vector<std::vector<std::size_t>> groupVars;
  std::vector<std::size_t> groupOf;
  std::vector<std::size_t> positionOf;
  std::vector<std::vector<std::size_t>> conflicts;
  std::vector<Precedence> precedences;
  std::vector<std::vector<std::size_t>> precedencesOf;
};

Structure decode(const IlpModel& model) {
  Structure s;
  const auto nv = model.variables.size();
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  s.groupOf.assign(nv, none);
  s.positionOf.assign(nv, none);
  s.conflicts.resize(nv);
  for (const auto& c : model.constraints) {
    if (c.series != 1) {
      continue;
    }
    if (c.relation != Relation::Equal || c.rhs != 1) {
      throw std::invalid_argument("series-1 row must be an equality to 1");
    }
    const auto g = s.groupVars.size();
    s.groupVars.emplace_back();
    for (const auto& t : c.terms) {
      if (t.coefficient != 1 || s.groupOf[t.variable] != none) {
        throw std::invalid_argument("series-1 rows must partition variables");
      }
      s.groupOf[t.variable] = g;
      s.positionOf[t.variable] = s.groupVars[g].size();
      s.groupVars[g].push_back(t.variable);
    }
  }
  if (std::find(s.groupOf.begin(), s.groupOf.end(), none) != s.groupOf.end()) {
    throw std::invalid_argument("variable outside every series-1 row");
  }
  s.precedencesOf.resize(s.groupVars.size());
  for (const auto& c : model.constraints) {
    if (c.series == 2) {
      if (c.terms.size() != 2 || c.relation != Relation::LessEqual || c.rhs != 1) {
        throw std::invalid_argument("series-2 row must be x + y <= 1");
      }
      s.conflicts[c.terms[0].variable].push_back(c.terms[1].variable);
      s.conflicts[c.terms[1].variable].push_back(c.terms[0].variable);
    } else if (c.series == 3) {
      Precedence p;
      p.before = none;
      p.after = none;
      p.rhs = c.rhs;
      for (const auto& t : c.terms) {
        auto& side = t.coefficient >= 0 ? p.before : p.after;
        const auto g = s.groupOf[t.variable];
        if (side != none && side != g) {
          throw std::invalid_argument("series-3 row must relate two groups");
        }
        side = g;
      }
      if (p.before == none || p.after == none || c.relation != Relation::LessEqual) {
        throw std::invalid_argument("series-3 row must relate two groups");
      }
      p.beforeCoef.assign(s.groupVars[p.before].size(), 0);
      p.afterCoef.assign(s.groupVars[p.after].size(), 0);
      for (const auto& t : c.terms) {
        if (t.coefficient >= 0) {
          p.beforeCoef[s.positionOf[t.variable]] = t.coefficient;
        } else {
          p.afterCoef[s.positionOf[t.variable]] = -t.coefficient;
        }
      }
      s.precedencesOf[p.before].push_back(s.precedences.size());
      s.precedencesOf[p.after].push_back(s.precedences.size());
      s.precedences.push_back(std::move(p));
    }
  }
  return s;
}

using Domains = std::vector<std::vector<char>>;

class Search {
public:
  Search(const IlpModel& model, const SolverOptions& options)
      : model_(model), options_(options), s_(decode(model)),
        start_(std::chrono::steady_clock::now()) {}

  SolveResult run() {
    Domains domains(s_.groupVars.size());
    for (std::size_t g = 0; g < domains.size(); ++g) {
      domains[g].assign(s_.groupVars[g].size(), 1);
    }
    bool complete = true;
    if (propagate(domains)) {
      complete = dfs(domains);
    }
    SolveResult result;
    result.nodesExplored = nodes_;
    if (best_) {
      result.status = complete ? SolveStatus::Optimal : SolveStatus::Feasible;
      result.schedule = decodeSchedule(*best_);
    } else {
      result.status = complete ? SolveStatus::Infeasible
                               : SolveStatus::BudgetExhausted;
    }
    return result;
  }

private:
  std::size_t stageAt(std::size_t g, std::size_t pos) const {
    return model_.variables[s_.groupVars[g][pos]].stage;
  }

  static std::size_t aliveCount(const std::vector<char>& d) {
    return static_cast<std::size_t>(std::count(d.begin(), d.end(), 1));
  }

  // Returns false on a wipe-out.
  bool propagate(Domains& d) const {
    std::vector<char> fixedDone(d.size(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t g = 0; g < d.size(); ++g) {
        const auto alive = aliveCount(d[g]);
        if (alive == 0) {
          return false;
        }
        if (alive != 1 || fixedDone[g]) {
          continue;
        }
        fixedDone[g] = 1;
        const auto pos = static_cast<std::size_t>(
            std::find(d[g].begin(), d[g].end(), 1) - d[g].begin());
        for (const auto other : s_.conflicts[s_.groupVars[g][pos]]) {
          auto& cell = d[s_.groupOf[other]][s_.positionOf[other]];
          if (cell) {
            cell = 0;
            changed = true;
          }
        }
      }
      for (const auto& p : s_.precedences) {
        long minBefore = std::numeric_limits<long>::max();
        for (std::size_t k = 0; k < d[p.before].size(); ++k) {
          if (d[p.before][k]) {
            minBefore = std::min(minBefore, p.beforeCoef[k]);
          }
        }
        long maxAfter = std::numeric_limits<long>::min();
        for (std::size_t k = 0; k < d[p.after].size(); ++k) {
          if (d[p.after][k]) {
            maxAfter = std::max(maxAfter, p.afterCoef[k]);
          }
        }
        if (minBefore == std::numeric_limits<long>::max() ||
            maxAfter == std::numeric_limits<long>::min()) {
          return false;
        }
        for (std::size_t k = 0; k < d[p.after].size(); ++k) {
          if (d[p.after][k] && p.afterCoef[k] < minBefore - p.rhs) {
            d[p.after][k] = 0;
            changed = true;
          }
        }
        for (std::size_t k = 0; k < d[p.before].size(); ++k) {
          if (d[p.before][k] && p.beforeCoef[k] > maxAfter + p.rhs) {
            d[p.before][k] = 0;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  std::size_t lowerBound(const Domains& d) const {
    std::size_t sum = 0;
    for (std::size_t g = 0; g < d.size(); ++g) {
      for (std::size_t k = 0; k < d[g].size(); ++k) {
        if (d[g][k]) {
          sum += stageAt(g, k);
          break;
        }
      }
    }
    return sum;
  }

  bool budgetLeft() {
    ++nodes_;
    if (nodes_ > options_.nodeBudget) {
      return false;
    }
    if ((nodes_ & 1023U) == 0 &&
        std::chrono::steady_clock::now() - start_ > options_.timeBudget) {
      return false;
    }
    return true;
  }

  // Returns false when the search was cut short by the budget.
  bool dfs(const Domains& d) {
    if (!budgetLeft()) {
      return false;
    }
    if (best_ && (!options_.minimizeStageSum || lowerBound(d) >= bestSum_)) {
      return true;
    }
    std::size_t branch = d.size();
    for (std::size_t g = 0; g < d.size(); ++g) {
      if (aliveCount(d[g]) > 1) {
        branch = g;
        break;
      }
    }
    if (branch == d.size()) {
      best_ = d;
      bestSum_ = lowerBound(d);
      return true;
    }
    for (std::size_t k = 0; k < d[branch].size(); ++k) {
      if (!d[branch][k]) {
        continue;
      }
      Domains child = d;
      std::fill(child[branch].begin(), child[branch].end(), 0);
      child[branch][k] = 1;
      if (!propagate(child)) {
        continue;
      }
      if (!dfs(child)) {
        return false;
      }
      if (best_ && !options_.minimizeStageSum) {
        return true;
      }
    }
    return true;
  }

  Schedule decodeSchedule(const Domains& d) const {
    std::vector<std::size_t> stageOf(model_.instructionCount, 0);
    for (std::size_t g = 0; g < d.size(); ++g) {
      for (std::size_t k = 0; k < d[g].size(); ++k) {
        if (d[g][k]) {
          const auto& v = model_.variables[s_.groupVars[g][k]];
          stageOf.at(v.instruction - 1) = v.stage;
        }
      }
    }
    return {model_.horizon, std::move(stageOf)};
  }

  const IlpModel& model_;
  SolverOptions options_;
  Structure s_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  std::optional<Domains> best_;
  std::size_t bestSum_ = 0;
};

} // namespace

SolveResult solve(const IlpModel& model, const SolverOptions& options) {
  return Search(model, options).run();
}

ScheduleOutcome scheduleNetlist(const Netlist& netlist,
                                const SolverOptions& options) {
  const auto graph = buildDataflow(netlist);
  ScheduleOutcome outcome;
  outcome.lowerBound = stageLowerBound(netlist, graph);
  if (netlist.empty()) {
    outcome.schedule = Schedule(0, {});
    return outcome;
  }
  for (auto horizon = outcome.lowerBound; horizon <= netlist.size(); ++horizon) {
    outcome.horizonsTried.push_back(horizon);
    const auto windows = asapAlap(graph, horizon);
    const auto model = emitIlp(netlist, graph, windows);
    SolverOptions remaining = options;
    if (outcome.nodesExplored >= options.nodeBudget) {
      throw SchedulingError("solver node budget exhausted",
                            outcome.nodesExplored);
    }
    remaining.nodeBudget = options.nodeBudget - outcome.nodesExplored;
    const auto result = solve(model, remaining);
    outcome.nodesExplored += result.nodesExplored;
    switch (result.status) {
    case SolveStatus::Optimal:
    case SolveStatus::Feasible:
      outcome.schedule = *result.schedule;
      outcome.provenCanonical = result.status == SolveStatus::Optimal;
      return outcome;
    case SolveStatus::BudgetExhausted:
      throw SchedulingError("solver budget exhausted at horizon " +
                                std::to_string(horizon) + " after " +
                                std::to_string(outcome.nodesExplored) +
                                " nodes",
                            outcome.nodesExplored);
    case SolveStatus::Infeasible:
      break;
    }
  }
  // Unreachable for valid netlists: one instruction per stage always works.
  throw SchedulingError("no feasible horizon", outcome.nodesExplored);
}

// ---------------------------------------------------------------------------
// Validation and exhaustive oracle
// ---------------------------------------------------------------------------

std::vector<Violation> validate(const Netlist& netlist,
                                const DataflowGraph& graph,
                                const Schedule& schedule) {
  std::vector<Violation> out;
  if (schedule.size() != netlist.size()) {
    out.push_back({1, {}, "schedule covers " + std::to_string(schedule.size()) +
                              " instructions, netlist has " +
                              std::to_string(netlist.size())});
    return out;
  }
  const auto horizon = std::max(schedule.horizon(), schedule.stageCount());
  for (const auto& instr : netlist.instructions()) {
    const auto stage = schedule.stageOf(instr.id);
    if (stage == 0 || stage > horizon) {
      out.push_back({1, {instr.id},
                     "instruction " + std::to_string(instr.id) +
                         " is not assigned to a stage in 1.." +
                         std::to_string(horizon)});
    }
  }
  const auto& instrs = netlist.instructions();
  for (std::size_t a = 0; a < instrs.size(); ++a) {
    for (std::size_t b = a + 1; b < instrs.size(); ++b) {
      if (schedule.stageOf(instrs[a].id) != schedule.stageOf(instrs[b].id) ||
          schedule.stageOf(instrs[a].id) == 0) {
        continue;
      }
      for (const auto q : instrs[a].qubits()) {
        if (instrs[b].touches(q)) {
          out.push_back({2, {instrs[a].id, instrs[b].id},
                         "instructions " + std::to_string(instrs[a].id) +
                             " and " + std::to_string(instrs[b].id) +
                             " both use q" + std::to_string(q) + " in stage " +
                             std::to_string(schedule.stageOf(instrs[a].id))});
          break;
        }
      }
    }
  }
  for (const auto& [from, to] : graph.edges()) {
    if (schedule.stageOf(from) >= schedule.stageOf(to)) {
      out.push_back({3, {from, to},
                     "instruction " + std::to_string(to) +
                         " depends on " + std::to_string(from) +
                         " but is not in a later stage"});
    }
  }
  return out;
}

namespace {

bool assignStages(const Netlist& netlist, const DataflowGraph& graph,
                  std::size_t horizon, std::vector<std::size_t>& stage,
                  std::size_t index) {
  if (index == netlist.size()) {
    return true;
  }
  const auto& instr = netlist.instructions()[index];
  for (std::size_t l = 1; l <= horizon; ++l) {
    bool ok = true;
    for (std::size_t k = 0; k < index && ok; ++k) {
      if (stage[k] != l) {
        continue;
      }
      for (const auto q : instr.qubits()) {
        if (netlist.instructions()[k].touches(q)) {
          ok = false;
        }
      }
    }
    for (const auto p : graph.predecessors(instr.id)) {
      ok = ok && stage[p - 1] < l;
    }
    if (!ok) {
      continue;
    }
    stage[index] = l;
    if (assignStages(netlist, graph, horizon, stage, index + 1)) {
      return true;
    }
  }
  stage[index] = 0;
  return false;
}

} // namespace

std::size_t oracleMinStages(const Netlist& netlist, const DataflowGraph& graph) {
  if (netlist.size() > 12) {
    throw std::invalid_argument("oracle is limited to 12 instructions");
  }
  for (std::size_t horizon = 0; horizon <= netlist.size(); ++horizon) {
    std::vector<std::size_t> stage(netlist.size(), 0);
    if (assignStages(netlist, graph, horizon, stage, 0)) {
      return horizon;
    }
  }
  throw std::logic_error("no feasible stage assignment");
}

} // namespace trapflow
