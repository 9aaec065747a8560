// SPDX-License-Identifier: Apache-2.0

#include "support/Fixtures.hpp"
#include "support/RandomCircuits.hpp"
#include "support/Unitary.hpp"
#include "trapflow/Dependency.hpp"

#include <gtest/gtest.h>

#include <random>

namespace trapflow {
namespace {

Instruction gate(InstrId id, GateKind kind, std::vector<Qubit> controls, Qubit target) {
  return Instruction{id, kind, std::move(controls), target};
}

TEST(Exchangeable, WorkedExamples) {
  const auto n = test::code932();
  EXPECT_TRUE(exchangeable(n.at(6), n.at(7)));
  EXPECT_FALSE(exchangeable(n.at(3), n.at(10)));
}

TEST(Exchangeable, Cases) {
  const auto cx01 = gate(1, GateKind::CX, {0}, 1);
  EXPECT_TRUE(exchangeable(cx01, gate(2, GateKind::CX, {0}, 2)));   // shared control
  EXPECT_TRUE(exchangeable(cx01, gate(2, GateKind::CX, {2}, 1)));   // shared target
  EXPECT_FALSE(exchangeable(cx01, gate(2, GateKind::CX, {1}, 2)));  // target feeds control
  EXPECT_FALSE(exchangeable(cx01, gate(2, GateKind::CZ, {2}, 1)));  // kinds differ, same target
  EXPECT_TRUE(exchangeable(cx01, gate(2, GateKind::CZ, {0}, 2)));
  EXPECT_TRUE(exchangeable(cx01, gate(2, GateKind::H, {}, 5)));     // disjoint
  EXPECT_FALSE(exchangeable(cx01, gate(2, GateKind::H, {}, 1)));
  EXPECT_FALSE(exchangeable(cx01, gate(2, GateKind::Measure, {}, 0)));
  EXPECT_FALSE(exchangeable(gate(1, GateKind::PrepZ, {}, 0), gate(2, GateKind::T, {}, 0)));
  EXPECT_TRUE(exchangeable(gate(1, GateKind::T, {}, 0), gate(2, GateKind::S, {}, 0)));
  EXPECT_TRUE(exchangeable(gate(1, GateKind::H, {}, 0), gate(2, GateKind::H, {}, 0)));
  EXPECT_FALSE(exchangeable(gate(1, GateKind::H, {}, 0), gate(2, GateKind::X, {}, 0)));
}

TEST(Exchangeable, SymmetricAndSoundAgainstUnitaries) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = test::randomNetlist(rng, 2, 4);
    if (n.size() < 2) {
      continue;
    }
    const auto& a = n.at(1);
    const auto& b = n.at(2);
    EXPECT_EQ(exchangeable(a, b), exchangeable(b, a));
    if (exchangeable(a, b)) {
      const auto width = n.qubitCount();
      const auto ua = test::gateUnitary(a, width);
      const auto ub = test::gateUnitary(b, width);
      EXPECT_LT(test::distance(test::multiply(ua, ub), test::multiply(ub, ua)), 1e-9)
          << renderQasm(n);
    }
  }
}

TEST(CommonQubitTable, Rows) {
  const auto table = commonQubitTable(test::code932());
  EXPECT_EQ(table.at(3), (std::vector<InstrId>{7, 8, 9, 10, 15, 18}));
  EXPECT_EQ(table.at(4), (std::vector<InstrId>{6, 11}));
  EXPECT_EQ(table.at(0), (std::vector<InstrId>{1, 18, 19, 20}));
  EXPECT_EQ(table.at(5), (std::vector<InstrId>{4, 5, 16, 19}));
  EXPECT_EQ(table.size(), 9U);
  EXPECT_TRUE(commonQubitTable(parseQasm("")).empty());
}

TEST(Dataflow, KnownEdges) {
  const auto n = test::code932();
  const auto g = buildDataflow(n);
  EXPECT_TRUE(g.reaches(4, 16));
  EXPECT_TRUE(g.reaches(4, 19));
  EXPECT_FALSE(g.hasEdge(6, 7));
  EXPECT_FALSE(g.reaches(6, 7));
  EXPECT_TRUE(g.hasEdge(3, 10));
  EXPECT_TRUE(g.hasEdge(6, 11));
}

TEST(Dataflow, EdgesMatchPairwiseRule) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = test::randomNetlist(rng, 14, 5);
    const auto g = buildDataflow(n);
    for (InstrId j = 1; j <= n.size(); ++j) {
      for (InstrId i = j + 1; i <= n.size(); ++i) {
        EXPECT_EQ(g.hasEdge(j, i), !exchangeable(n.at(j), n.at(i)));
      }
    }
  }
}

TEST(Dataflow, TransitiveReductionKeepsReachability) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = buildDataflow(test::randomNetlist(rng, 14, 4));
    const auto r = g.transitiveReduction();
    EXPECT_LE(r.edgeCount(), g.edgeCount());
    EXPECT_EQ(r.criticalPathLength(), g.criticalPathLength());
    for (InstrId a = 1; a <= g.nodeCount(); ++a) {
      for (InstrId b = a + 1; b <= g.nodeCount(); ++b) {
        EXPECT_EQ(g.reaches(a, b), r.reaches(a, b));
      }
    }
    for (const auto& [from, to] : r.edges()) {
      for (const auto mid : r.successors(from)) {
        EXPECT_FALSE(mid != to && r.reaches(mid, to));
      }
    }
  }
}

TEST(Dataflow, RejectsBackwardEdges) {
  DataflowGraph g(3);
  EXPECT_THROW(g.addEdge(2, 1), std::invalid_argument);
  EXPECT_THROW(g.addEdge(1, 4), std::out_of_range);
}

TEST(Windows, InstructionSixAtHorizonSix) {
  const auto g = buildDataflow(test::code932());
  const auto w = asapAlap(g, 6);
  EXPECT_EQ(w.of(6).asap, 1U);
  EXPECT_EQ(w.of(6).alap, 5U);
  EXPECT_EQ(w.of(6).slack(), 4U);
  for (InstrId id = 1; id <= 20; ++id) {
    EXPECT_LE(w.of(id).asap, w.of(id).alap);
    for (const auto s : g.successors(id)) {
      EXPECT_LT(w.of(id).asap, w.of(s).asap);
      EXPECT_LT(w.of(id).alap, w.of(s).alap);
    }
  }
}

TEST(Windows, BelowCriticalPathThrows) {
  const auto g = buildDataflow(parseQasm("H q0\nCX q0,q1\nH q1\n"));
  EXPECT_EQ(g.criticalPathLength(), 3U);
  EXPECT_THROW((void)asapAlap(g, 2), InfeasibleHorizon);
  EXPECT_NO_THROW((void)asapAlap(g, 3));
}

TEST(LowerBound, Code932) {
  const auto n = test::code932();
  EXPECT_EQ(stageLowerBound(n, buildDataflow(n)), 6U);
}

TEST(LowerBound, CatFour) {
  const auto n = generateCatCircuit(4);
  EXPECT_EQ(stageLowerBound(n, buildDataflow(n)), 4U);
}

TEST(DataflowJson, Shape) {
  const auto g = buildDataflow(parseQasm("H q0\nCX q0,q1\n"));
  const auto j = g.toJson();
  EXPECT_EQ(j.at("nodes"), nlohmann::json::array({1, 2}));
  EXPECT_EQ(j.at("edges"), nlohmann::json::parse("[[1,2]]"));
  EXPECT_NE(g.toDot().find("n1 -> n2"), std::string::npos);
}

} // namespace
} // namespace trapflow
