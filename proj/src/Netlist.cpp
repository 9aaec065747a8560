// SPDX-License-Identifier: Apache-2.0

#include "trapflow/Netlist.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

namespace trapflow {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<GateInfo, 13> kGates{{
    {GateKind::H, "H", 1},
    {GateKind::X, "X", 1},
    {GateKind::T, "T", 1},
    {GateKind::Tdg, "Tdg", 1},
    {GateKind::S, "S", 1},
    {GateKind::CX, "CX", 2},
    {GateKind::CY, "CY", 2},
    {GateKind::CZ, "CZ", 2},
    {GateKind::CV, "CV", 2},
    {GateKind::CVdg, "CVdg", 2},
    {GateKind::Toffoli, "Toffoli", 3},
    {GateKind::Measure, "Measure", 1},
    {GateKind::PrepZ, "PrepZ", 1},
}};

const GateInfo& info(GateKind kind) {
  return kGates.at(static_cast<std::size_t>(kind));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<std::uint64_t> parseUnsigned(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    return std::nullopt;
  }
  return value;
}

void validateInstruction(const Instruction& instr, std::size_t line) {
  if (instr.controls.size() + 1 != arity(instr.kind)) {
    throw ParseError(line, "gate " + std::string(gateName(instr.kind)) +
                               " expects " +
                               std::to_string(arity(instr.kind)) +
                               " operand(s)");
  }
  auto qubits = instr.qubits();
  std::sort(qubits.begin(), qubits.end());
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw ParseError(line, "duplicate operand qubit");
  }
}

} // namespace

std::size_t arity(GateKind kind) { return info(kind).arity; }

std::string_view gateName(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gateFromName(std::string_view name) {
  const auto key = lower(name);
  for (const auto& g : kGates) {
    if (lower(g.name) == key) {
      return g.kind;
    }
  }
  if (key == "cnot") {
    return GateKind::CX;
  }
  if (key == "ccx" || key == "ccnot") {
    return GateKind::Toffoli;
  }
  if (key == "tdag" || key == "t+") {
    return GateKind::Tdg;
  }
  if (key == "cvdag" || key == "cv+") {
    return GateKind::CVdg;
  }
  if (key == "measz" || key == "measure_z") {
    return GateKind::Measure;
  }
  if (key == "prep" || key == "prep_z") {
    return GateKind::PrepZ;
  }
  return std::nullopt;
}

std::vector<Qubit> Instruction::qubits() const {
  std::vector<Qubit> out = controls;
  out.push_back(target);
  return out;
}

bool Instruction::touches(Qubit q) const {
  return target == q ||
         std::find(controls.begin(), controls.end(), q) != controls.end();
}

Netlist::Netlist(std::vector<Instruction> instructions, std::size_t qubitCount)
    : instructions_(std::move(instructions)), qubitCount_(qubitCount) {
  for (std::size_t k = 0; k < instructions_.size(); ++k) {
    const auto& instr = instructions_[k];
    if (instr.id != k + 1) {
      throw std::invalid_argument("instruction ids must be 1..n in order");
    }
    if (instr.controls.size() + 1 != arity(instr.kind)) {
      throw std::invalid_argument("arity mismatch in instruction " +
                                  std::to_string(instr.id));
    }
    for (const auto q : instr.qubits()) {
      if (q >= qubitCount_) {
        throw std::invalid_argument("qubit index out of range in instruction " +
                                    std::to_string(instr.id));
      }
    }
    if (std::find(instr.controls.begin(), instr.controls.end(), instr.target) !=
        instr.controls.end()) {
      throw std::invalid_argument("target is also a control in instruction " +
                                  std::to_string(instr.id));
    }
  }
}

const Instruction& Netlist::at(InstrId id) const {
  if (id == 0 || id > instructions_.size()) {
    throw std::out_of_range("instruction id " + std::to_string(id));
  }
  return instructions_[id - 1];
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

Netlist parseQasm(std::string_view text) {
  std::vector<Instruction> instructions;
  std::size_t qubitCount = 0;
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (eol == text.size()) {
        break;
      }
      continue;
    }

    const auto expectedId = static_cast<InstrId>(instructions.size() + 1);
    if (line.front() == '(') {
      const auto close = line.find(')');
      if (close == std::string_view::npos) {
        throw ParseError(lineNo, "unterminated label");
      }
      const auto label = parseUnsigned(trim(line.substr(1, close - 1)));
      if (!label) {
        throw ParseError(lineNo, "label must be a number");
      }
      if (*label != expectedId) {
        throw ParseError(lineNo, "label (" + std::to_string(*label) +
                                     ") out of sequence, expected (" +
                                     std::to_string(expectedId) + ")");
      }
      line = trim(line.substr(close + 1));
    }

    std::size_t nameEnd = 0;
    while (nameEnd < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[nameEnd]))) {
      ++nameEnd;
    }
    const auto name = line.substr(0, nameEnd);
    const auto kind = gateFromName(name);
    if (!kind) {
      throw ParseError(lineNo, "unknown gate '" + std::string(name) + "'");
    }

    std::vector<Qubit> operands;
    std::string_view rest = trim(line.substr(nameEnd));
    if (rest.empty()) {
      throw ParseError(lineNo, "missing operands");
    }
    while (true) {
      const auto comma = rest.find(',');
      auto token = trim(rest.substr(0, comma));
      if (token.size() < 2 || (token.front() != 'q' && token.front() != 'Q')) {
        throw ParseError(lineNo, "malformed operand '" + std::string(token) +
                                     "'");
      }
      const auto index = parseUnsigned(token.substr(1));
      if (!index || *index > 1'000'000) {
        throw ParseError(lineNo, "malformed operand '" + std::string(token) +
                                     "'");
      }
      operands.push_back(static_cast<Qubit>(*index));
      if (comma == std::string_view::npos) {
        break;
      }
      rest = rest.substr(comma + 1);
    }
    if (operands.size() != arity(*kind)) {
      throw ParseError(lineNo, "gate " + std::string(gateName(*kind)) +
                                   " expects " + std::to_string(arity(*kind)) +
                                   " operand(s), got " +
                                   std::to_string(operands.size()));
    }

    Instruction instr;
    instr.id = expectedId;
    instr.kind = *kind;
    instr.target = operands.back();
    operands.pop_back();
    instr.controls = std::move(operands);
    validateInstruction(instr, lineNo);
    for (const auto q : instr.qubits()) {
      qubitCount = std::max<std::size_t>(qubitCount, q + 1);
    }
    instructions.push_back(std::move(instr));
    if (eol == text.size()) {
      break;
    }
  }
  return Netlist(std::move(instructions), qubitCount);
}

std::string renderQasm(const Netlist& netlist) {
  std::ostringstream out;
  for (const auto& instr : netlist.instructions()) {
    out << '(' << instr.id << ") " << gateName(instr.kind) << ' ';
    bool first = true;
    for (const auto q : instr.qubits()) {
      out << (first ? "" : ",") << 'q' << q;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json toJson(const Netlist& netlist) {
  nlohmann::json instructions = nlohmann::json::array();
  for (const auto& instr : netlist.instructions()) {
    instructions.push_back({{"id", instr.id},
                            {"kind", gateName(instr.kind)},
                            {"controls", instr.controls},
                            {"target", instr.target}});
  }
  return {{"qubit_count", netlist.qubitCount()},
          {"instructions", std::move(instructions)}};
}

Netlist netlistFromJson(const nlohmann::json& j) {
  std::vector<Instruction> instructions;
  for (const auto& item : j.at("instructions")) {
    Instruction instr;
    instr.id = item.at("id").get<InstrId>();
    const auto kind = gateFromName(item.at("kind").get<std::string>());
    if (!kind) {
      throw std::invalid_argument("unknown gate kind " +
                                  item.at("kind").dump());
    }
    instr.kind = *kind;
    instr.controls = item.at("controls").get<std::vector<Qubit>>();
    instr.target = item.at("target").get<Qubit>();
    instructions.push_back(std::move(instr));
  }
  return Netlist(std::move(instructions),
                 j.at("qubit_count").get<std::size_t>());
}

namespace {

Instruction gate(GateKind kind, std::vector<Qubit> controls, Qubit target) {
  Instruction instr;
  instr.kind = kind;
  instr.controls = std::move(controls);
  instr.target = target;
  return instr;
}

// Controls a, b and target c.
void expandToffoli(GateLibrary library, Qubit a, Qubit b, Qubit c,
                   std::vector<Instruction>& out) {
  using enum GateKind;
  if (library == GateLibrary::CV) {
    out.push_back(gate(CV, {b}, c));
    out.push_back(gate(CX, {a}, b));
    out.push_back(gate(CVdg, {b}, c));
    out.push_back(gate(CX, {a}, b));
    out.push_back(gate(CV, {a}, c));
    return;
  }
  // Six-CNOT network; the trailing Tdg/CX/Tdg/CX/T/S block realises the
  // controlled-S phase on the two controls.
  out.push_back(gate(H, {}, c));
  out.push_back(gate(CX, {b}, c));
  out.push_back(gate(Tdg, {}, c));
  out.push_back(gate(CX, {a}, c));
  out.push_back(gate(T, {}, c));
  out.push_back(gate(CX, {b}, c));
  out.push_back(gate(Tdg, {}, c));
  out.push_back(gate(CX, {a}, c));
  out.push_back(gate(Tdg, {}, b));
  out.push_back(gate(T, {}, c));
  out.push_back(gate(CX, {a}, b));
  out.push_back(gate(H, {}, c));
  out.push_back(gate(Tdg, {}, b));
  out.push_back(gate(CX, {a}, b));
  out.push_back(gate(T, {}, a));
  out.push_back(gate(S, {}, b));
}

} // namespace

Netlist decompose(const Netlist& netlist, GateLibrary library) {
  std::vector<Instruction> out;
  out.reserve(netlist.size());
  for (const auto& instr : netlist.instructions()) {
    if (instr.kind == GateKind::Toffoli) {
      expandToffoli(library, instr.controls.at(0), instr.controls.at(1),
                    instr.target, out);
    } else if (arity(instr.kind) > 2) {
      throw std::invalid_argument("no expansion rule for " +
                                  std::string(gateName(instr.kind)));
    } else {
      out.push_back(instr);
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].id = static_cast<InstrId>(k + 1);
  }
  return Netlist(std::move(out), netlist.qubitCount());
}

Netlist generateCatCircuit(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("Cat circuit needs n >= 2");
  }
  using enum GateKind;
  const auto mid = static_cast<Qubit>((n - 1) / 2);
  const auto last = static_cast<Qubit>(n);
  std::vector<Instruction> out;
  out.push_back(gate(H, {}, mid));
  out.push_back(gate(CX, {mid}, mid + 1));
  // Each round extends the low end first, then the high end.
  Qubit low = mid;
  Qubit high = mid + 1;
  while (low > 0 || high < last) {
    if (low > 0) {
      out.push_back(gate(CX, {low}, low - 1));
      --low;
    }
    if (high < last) {
      out.push_back(gate(CX, {high}, high + 1));
      ++high;
    }
  }
  out.push_back(gate(CX, {0}, last));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].id = static_cast<InstrId>(k + 1);
  }
  return Netlist(std::move(out), n + 1);
}

} // namespace trapflow
