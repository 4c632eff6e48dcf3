// Copyright 2026 The unifactor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "unifactor/qasm.hpp"
#include "unifactor/umat.hpp"

using namespace unifactor;

TEST(ParseQasm, SingleCnot) {
  const Circuit c = parse_qasm("OPENQASM 2.0; qreg q[2]; cx q[0],q[1];");
  EXPECT_EQ(c.num_qubits, 2u);
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0], LocatedGate::cnot(0, 1));
}

TEST(ParseQasm, AngleArithmetic) {
  const Circuit c = parse_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n"
      "u3(pi/2, 0, -pi) q[0];\n"
      "u(2*(pi - 1)/4, -(-0.5), 1e-3) q[0]; // alias\n"
      "rz(-pi + 3) q[0];\n"
      "barrier q;\n");
  ASSERT_EQ(c.gates.size(), 3u);
  EXPECT_EQ(c.gates[0].params, (std::vector<double>{std::numbers::pi / 2, 0.0, -std::numbers::pi}));
  EXPECT_DOUBLE_EQ(c.gates[1].params[0], 2 * (std::numbers::pi - 1) / 4);
  EXPECT_DOUBLE_EQ(c.gates[1].params[1], 0.5);
  EXPECT_DOUBLE_EQ(c.gates[1].params[2], 1e-3);
  EXPECT_EQ(c.gates[2].kind, GateKind::RZ);
  EXPECT_DOUBLE_EQ(c.gates[2].params[0], -std::numbers::pi + 3);
}

TEST(ParseQasm, RoundTripGeneratedCircuits) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    Circuit c;
    if (rep % 4 == 0) {
      c = gen_benchmark(static_cast<BenchmarkFamily>(rep % 3), 2 + rep % 4, 1 + rep % 3, rep);
    } else {
      c = oracle::random_circuit(1 + rep % 5, rep % 30, rng);
    }
    const Circuit back = parse_qasm(write_qasm(c));
    ASSERT_EQ(back, c) << write_qasm(c);
  }
}

TEST(WriteQasm, LowersSingleQubitUnitaries) {
  std::mt19937_64 rng(22);
  Circuit c(2);
  const auto u = oracle::random_unitary(2, rng);
  c.append(LocatedGate::variable(u, {1}));
  const Circuit back = parse_qasm(write_qasm(c));
  ASSERT_EQ(back.gates.size(), 1u);
  EXPECT_EQ(back.gates[0].kind, GateKind::U3);
  EXPECT_NEAR(std::abs(hs_inner(gate_unitary(back.gates[0]), u)), 2.0, 1e-12);

  Circuit wide(2);
  wide.append(LocatedGate::variable(oracle::random_unitary(4, rng), {0, 1}));
  EXPECT_THROW(write_qasm(wide), std::invalid_argument);
}

namespace {

QasmError parse_error(const std::string& text) {
  try {
    parse_qasm(text);
  } catch (const QasmError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return QasmError(0, 0, "");
}

}  // namespace

TEST(ParseQasm, DiagnosticsCarryPositions) {
  const QasmError e = parse_error("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[5];\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 12u);
  EXPECT_NE(e.message().find("out of range"), std::string::npos);

  const QasmError semi = parse_error("qreg q[1];\nu3(0,0,0) q[0]\n");
  EXPECT_EQ(semi.line(), 3u);
  EXPECT_NE(semi.message().find("expected ';'"), std::string::npos);
}

TEST(ParseQasm, DistinctErrorClasses) {
  const std::vector<std::string> bad = {
      "qreg q[2]; qreg r[2];",
      "qreg q[1]; measure q[0] -> c[0];",
      "qreg q[1]; h q[0];",
      "OPENQASM 3.0; qreg q[1];",
      "qreg q[1]; u3(0,0) q[0];",
      "qreg q[1]; rz(theta) q[0];",
      "qreg q[2]; cx q[1],q[1];",
      "qreg q[1]; rz(1/0) q[0];",
      "u3(0,0,0) q[0];",
      "qreg q[1]; rz(0) r[0];",
      "qreg q[1]; rz(0) q[0]; $",
      "include \"qelib1.inc\";",
  };
  std::set<std::string> messages;
  for (const auto& text : bad) messages.insert(parse_error(text).message());
  EXPECT_EQ(messages.size(), bad.size());
}

TEST(Umat, RoundTripIsExact) {
  std::mt19937_64 rng(23);
  const auto u = oracle::random_unitary(4, rng);
  const std::string text = write_umat(u);
  EXPECT_NE(text.find("\"n\": 2"), std::string::npos);
  EXPECT_EQ(read_umat(text), u);
}

TEST(Umat, RejectsMalformed) {
  EXPECT_THROW(read_umat("{"), std::invalid_argument);
  EXPECT_THROW(read_umat(R"({"n": 1, "re": [[1,0],[0,1]]})"), std::invalid_argument);
  EXPECT_THROW(read_umat(R"({"n": 1, "re": [[1,0]], "im": [[0,0]]})"), std::invalid_argument);
  EXPECT_THROW(read_umat(R"({"n": 1, "re": [[1,"a"],[0,1]], "im": [[0,0],[0,0]]})"),
               std::invalid_argument);
  EXPECT_THROW(write_umat(ComplexMatrix(3, 3)), DimensionError);
}
