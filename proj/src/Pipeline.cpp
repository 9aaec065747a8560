// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Pipeline.hpp"

namespace trapflow {

IlpModel PipelineResult::ilp() const {
  const auto horizon = outcome.schedule.horizon();
  return emitIlp(netlist, dataflow, asapAlap(dataflow, horizon));
}

PipelineResult runPipeline(const Netlist& input, const PipelineOptions& options) {
  if (input.empty()) {
    throw std::invalid_argument("netlist has no instructions");
  }
  PipelineResult r;
  r.netlist = options.library ? decompose(input, *options.library) : input;
  r.dataflow = buildDataflow(r.netlist);
  r.outcome = scheduleNetlist(r.netlist, options.solver);
  if (options.upTo == PipelineStage::Schedule) {
    return r;
  }
  r.qfg = buildQfg(r.netlist, r.outcome.schedule);
  if (!qfgDegreeCheck(r.qfg)) {
    throw DrawingError("qubit flow graph has a node of degree above 4");
  }
  r.drawing = drawQfg(r.qfg);
  r.tiled = tile(r.drawing);
  reserveIdleCells(r.tiled.layout, r.netlist);
  foldGateLocations(r.tiled, r.netlist, r.qfg);
  r.placement = placeQubits(r.netlist, r.outcome.schedule, r.tiled.layout);
  r.plan = route(r.qfg, r.tiled, r.placement);
  if (options.upTo == PipelineStage::Layout) {
    return r;
  }
  r.latency = simulate(r.netlist, r.outcome.schedule, r.tiled.layout, r.plan,
                       r.placement.placement, options.model);
  return r;
}

} // namespace trapflow
