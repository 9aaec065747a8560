// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "trapflow/Netlist.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace trapflow::test {

inline std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(TRAPFLOW_FIXTURES) + "/" + name);
  if (!in) {
    throw std::runtime_error("missing fixture " + name);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Netlist code932() { return parseQasm(readFixture("code_9_3_2.qasm")); }

} // namespace trapflow::test
