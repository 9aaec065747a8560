// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Dependency.hpp"
#include "trapflow/Latency.hpp"
#include "trapflow/Layout.hpp"
#include "trapflow/Netlist.hpp"
#include "trapflow/Ortho.hpp"
#include "trapflow/QubitFlow.hpp"
#include "trapflow/Schedule.hpp"

#include <optional>

namespace trapflow {

enum class PipelineStage : std::uint8_t { Schedule, Layout, Latency };

struct PipelineOptions {
  std::optional<GateLibrary> library;
  SolverOptions solver;
  LatencyModel model;
  PipelineStage upTo = PipelineStage::Latency;
};

/// Every intermediate product. Later members are empty when the run
/// stopped at an earlier stage.
struct PipelineResult {
  Netlist netlist;
  DataflowGraph dataflow;
  ScheduleOutcome outcome;
  QubitFlowGraph qfg;
  OrthogonalDrawing drawing;
  TiledDrawing tiled;
  PlacementResult placement;
  RoutePlan plan;
  LatencyReport latency;

  /// LP model at the final horizon.
  [[nodiscard]] IlpModel ilp() const;
};

/// Throws SchedulingError, DrawingError or LayoutError from the stage that
/// fails; an empty netlist is rejected with std::invalid_argument.
[[nodiscard]] PipelineResult runPipeline(const Netlist& input, const PipelineOptions& options = {});

} // namespace trapflow
