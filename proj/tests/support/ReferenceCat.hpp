// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Latency.hpp"
#include "trapflow/QubitFlow.hpp"

#include <stdexcept>

namespace trapflow::test {

/// Hand-built cat-state plan on one straight channel (y = 0). The middle
/// qubit takes the H, steps one block to its partner, and every chain CX
/// moves its control one block outward onto a resident target. The two end
/// qubits close at a cell below the channel along three straight blocks and
/// two turns each. The closing runs are schematic: the bottom cell is not
/// adjacent to both ends once the channel is longer than five blocks.
struct ReferenceCatPlan {
  Netlist netlist;
  Schedule schedule;
  MacroLayout layout;
  RoutePlan plan;
  InitialPlacement placement;
};

inline ReferenceCatPlan referenceCatPlan(std::size_t n) {
  if (n < 3) {
    throw std::invalid_argument("reference plan needs n >= 3");
  }
  ReferenceCatPlan ref{generateCatCircuit(n), {}, {}, {}, {}};
  ref.schedule = scheduleNetlist(ref.netlist).schedule;
  const long m = static_cast<long>((n - 1) / 2);
  const long xLeft = 1 - m;
  const Cell bottom{xLeft + 1, -2};

  for (const auto& instr : ref.netlist.instructions()) {
    Cell c;
    if (instr.controls.empty()) {
      c = {0, 0};
    } else {
      const auto ctl = static_cast<long>(instr.controls.front());
      const auto tgt = static_cast<long>(instr.target);
      if (ctl == 0 && tgt == static_cast<long>(n)) {
        c = bottom;
      } else if (ctl == m && tgt == m + 1) {
        c = {1, 0};
      } else if (tgt < ctl) {
        c = {ctl - m, 0};
      } else {
        c = {ctl - m + 1, 0};
      }
    }
    ref.layout.gateLocationOf[instr.id] = c;
  }
  for (long k = 0; k <= static_cast<long>(n); ++k) {
    const long x = k < m ? k - m + 1 : (k == m ? 0 : (k == m + 1 ? 1 : k - m));
    ref.placement.cell[static_cast<Qubit>(k)] = {x, 0};
  }

  const auto qfg = buildQfg(ref.netlist, ref.schedule);
  for (const auto& e : qfg.edges()) {
    Route r{e.qubit, e.from, e.to, {}};
    const auto a = ref.layout.gateLocationOf.at(e.from);
    const auto b = ref.layout.gateLocationOf.at(e.to);
    if (b == bottom) {
      const long side = a.x == xLeft ? -1 : 1;
      r.path = {{{a.x + side, 0}, true},
                {{a.x + side, -1}, false},
                {{a.x + side, -2}, true},
                {{a.x, -2}, false},
                {bottom, false}};
    } else {
      for (long x = a.x; x != b.x;) {
        x += b.x > x ? 1 : -1;
        r.path.push_back({{x, 0}, false});
      }
    }
    ref.plan.routes.push_back(std::move(r));
  }
  for (const auto& r : ref.plan.routes) {
    if (!r.path.empty()) {
      ref.plan.movers[r.to].push_back(r.qubit);
    }
  }
  return ref;
}

} // namespace trapflow::test
