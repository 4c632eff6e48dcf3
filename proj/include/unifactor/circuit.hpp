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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unifactor/linalg.hpp"

namespace unifactor {

// Qubit 0 is the most significant bit of a basis-state index. A gate acting
// on location (l0, l1, ...) uses l0 as the most significant bit of its local
// index, so expand_to_n_qubits(kron(A, B), {0, 1}, 2) == kron(A, B).

enum class GateKind { U3, RZ, CNOT, ConstantUnitary, VariableUnitary };

std::string_view gate_kind_name(GateKind kind);
std::size_t param_count(GateKind kind);

struct LocatedGate {
  GateKind kind = GateKind::U3;
  std::vector<std::size_t> location;
  std::vector<double> params;
  // Only used by ConstantUnitary and VariableUnitary.
  ComplexMatrix matrix;

  static LocatedGate u3(std::size_t q, double theta, double phi, double lambda);
  static LocatedGate rz(std::size_t q, double theta);
  static LocatedGate cnot(std::size_t control, std::size_t target);
  static LocatedGate constant(ComplexMatrix u, std::vector<std::size_t> location);
  static LocatedGate variable(ComplexMatrix u, std::vector<std::size_t> location);

  std::size_t arity() const { return location.size(); }
  bool is_parameterized() const {
    return kind == GateKind::U3 || kind == GateKind::RZ;
  }
  /// True for gates the optimizers update (U3, RZ, VariableUnitary).
  bool is_optimizable() const {
    return is_parameterized() || kind == GateKind::VariableUnitary;
  }

  friend bool operator==(const LocatedGate&, const LocatedGate&) = default;
};

struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<LocatedGate> gates;

  Circuit() = default;
  explicit Circuit(std::size_t n) : num_qubits(n) {}

  /// Appends after validating the location against num_qubits.
  Circuit& append(LocatedGate g);
  std::size_t num_params() const;
  std::vector<double> params() const;
  /// Overwrites U3/RZ parameters in gate order; size must equal num_params().
  void set_params(std::span<const double> values);
  /// Throws std::invalid_argument on a malformed gate.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct GateCounts {
  std::size_t u3 = 0;
  std::size_t cnot = 0;
  std::size_t rz = 0;
  std::size_t other = 0;
  std::size_t total() const { return u3 + cnot + rz + other; }
};

GateCounts count_gates(const Circuit& c);

ComplexMatrix gate_unitary(const LocatedGate& g);
ComplexMatrix u3_matrix(double theta, double phi, double lambda);
ComplexMatrix rz_matrix(double theta);
ComplexMatrix cnot_matrix();

/// Analytic dU/dparam_i, one matrix per parameter. Only U3 and RZ.
std::vector<ComplexMatrix> gate_grad(const LocatedGate& g);

ComplexMatrix expand_to_n_qubits(const ComplexMatrix& u,
                                 std::span<const std::size_t> location,
                                 std::size_t n);

/// U = E_p ... E_1 with gate 1 applied first.
ComplexMatrix circuit_unitary(const Circuit& c);

struct U3Angles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double global_phase = 0.0;
};

/// u == e^{i global_phase} U3(theta, phi, lambda), theta in [0, pi],
/// phi and lambda in (-pi, pi].
U3Angles unitary_to_u3(const ComplexMatrix& u);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

enum class BenchmarkFamily { Tfim, QaoaRing, Random };

BenchmarkFamily parse_benchmark_family(std::string_view name);

/// Deterministic structured circuits.
///
///   tfim:      depth layers of [n U3 rotations, then CNOT-RZ-CNOT on every
///              nearest-neighbour pair (i, i+1)]; depth * (4n - 3) gates.
///   qaoa_ring: an initial U3 layer, then depth layers of [CNOT-RZ-CNOT on
///              every ring edge, U3 mixer on every qubit];
///              n + depth * (3E + n) gates with E = n for n > 2, else 1.
///   random:    depth * n gates, each a U3 on a uniform qubit or a CNOT on a
///              uniform ordered pair with equal probability.
///
/// All angles come from a seeded uniform(-pi, pi).
Circuit gen_benchmark(BenchmarkFamily family, std::size_t n, std::size_t depth,
                      std::uint64_t seed);

std::size_t benchmark_gate_count(BenchmarkFamily family, std::size_t n,
                                 std::size_t depth);

}  // namespace unifactor
