// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trapflow {

using Qubit = std::uint32_t;
using InstrId = std::uint32_t;

enum class GateKind : std::uint8_t {
  H,
  X,
  T,
  Tdg,
  S,
  CX,
  CY,
  CZ,
  CV,
  CVdg,
  Toffoli,
  Measure,
  PrepZ,
};

[[nodiscard]] std::size_t arity(GateKind kind);
[[nodiscard]] std::string_view gateName(GateKind kind);
/// Case-insensitive lookup; accepts the canonical names plus a few common
/// aliases (cnot, ccx, tdag, ...).
[[nodiscard]] std::optional<GateKind> gateFromName(std::string_view name);

struct Instruction {
  InstrId id = 0;
  GateKind kind = GateKind::H;
  /// Control qubits in operand order.
  std::vector<Qubit> controls;
  Qubit target = 0;

  /// Controls followed by the target, i.e. operand order in QASM.
  [[nodiscard]] std::vector<Qubit> qubits() const;
  [[nodiscard]] bool touches(Qubit q) const;

  bool operator==(const Instruction&) const = default;
};

/// Ordered gate sequence. Ids are 1..n in order and every qubit index is
/// below qubitCount(); the constructor enforces both.
class Netlist {
public:
  Netlist() = default;
  Netlist(std::vector<Instruction> instructions, std::size_t qubitCount);

  [[nodiscard]] const std::vector<Instruction>& instructions() const {
    return instructions_;
  }
  [[nodiscard]] std::size_t size() const { return instructions_.size(); }
  [[nodiscard]] bool empty() const { return instructions_.empty(); }
  [[nodiscard]] std::size_t qubitCount() const { return qubitCount_; }
  /// 1-based lookup.
  [[nodiscard]] const Instruction& at(InstrId id) const;

  bool operator==(const Netlist&) const = default;

private:
  std::vector<Instruction> instructions_;
  std::size_t qubitCount_ = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Parses the QASM subset: one `[(<label>)] <GATE> q<i>[,q<j>[,q<k>]]` per
/// non-empty line, `#` starts a comment.
[[nodiscard]] Netlist parseQasm(std::string_view text);
/// Inverse of parseQasm; labels every line.
[[nodiscard]] std::string renderQasm(const Netlist& netlist);

[[nodiscard]] nlohmann::json toJson(const Netlist& netlist);
[[nodiscard]] Netlist netlistFromJson(const nlohmann::json& j);

enum class GateLibrary : std::uint8_t { CV, FT };

/// Replaces every Toffoli by its expansion in the given library and
/// renumbers. All other gates pass through.
[[nodiscard]] Netlist decompose(const Netlist& netlist, GateLibrary library);

/// n-qubit Cat-state preparation on qubit lines Q0..Qn: H on the middle
/// line, a CX chain growing outwards in both directions, and a closing CX
/// between the two end lines.
[[nodiscard]] Netlist generateCatCircuit(std::size_t n);

} // namespace trapflow
