// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Netlist.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace trapflow::test {

/// Random netlist over H/X/T/S/CX/CZ/CV with at most `maxQubits` lines.
inline Netlist randomNetlist(std::mt19937& rng, std::size_t maxInstructions,
                             std::size_t maxQubits) {
  std::uniform_int_distribution<std::size_t> count(1, maxInstructions);
  std::uniform_int_distribution<std::size_t> width(2, maxQubits);
  const auto n = count(rng);
  const auto qubits = width(rng);
  std::uniform_int_distribution<Qubit> pick(0, static_cast<Qubit>(qubits - 1));
  const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::T,
                            GateKind::S,  GateKind::CX, GateKind::CX,
                            GateKind::CX, GateKind::CZ, GateKind::CV};
  std::uniform_int_distribution<std::size_t> kindPick(0, std::size(kinds) - 1);
  std::vector<Instruction> out;
  Qubit maxUsed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Instruction g;
    g.id = static_cast<InstrId>(k + 1);
    g.kind = kinds[kindPick(rng)];
    g.target = pick(rng);
    if (arity(g.kind) == 2) {
      Qubit c = pick(rng);
      while (c == g.target) {
        c = pick(rng);
      }
      g.controls.push_back(c);
      maxUsed = std::max(maxUsed, c);
    }
    maxUsed = std::max(maxUsed, g.target);
    out.push_back(std::move(g));
  }
  return Netlist(std::move(out), maxUsed + 1);
}

} // namespace trapflow::test
