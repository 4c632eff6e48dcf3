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
#include <span>

#include "unifactor/circuit.hpp"
#include "unifactor/linalg.hpp"

namespace unifactor {

/// The circuit tensor: a 2n-leg tensor stored as a 2^n x 2^n matrix whose
/// rows are the left (output) legs and columns the right (input) legs.
///
/// Gates are contracted locally onto either side. trace_all() is invariant
/// under moving a gate from one side to the other, which is what the
/// sweeps rely on: with U = E_p ... E_1, the tensor starts as U V^dagger and
/// gates migrate between the two ends of that product.
class CircuitTensor {
 public:
  CircuitTensor() = default;
  /// Wraps an arbitrary square matrix (mainly for tests).
  explicit CircuitTensor(ComplexMatrix data);

  std::size_t num_qubits() const { return num_qubits_; }
  const ComplexMatrix& data() const { return data_; }

  /// data <- data * expand(u or u^dagger)
  void apply_right(const ComplexMatrix& u, std::span<const std::size_t> location,
                   bool inverse = false);
  /// data <- expand(u or u^dagger) * data
  void apply_left(const ComplexMatrix& u, std::span<const std::size_t> location,
                  bool inverse = false);

  /// Partial trace over every qubit outside `location`, oriented so that
  /// Tr(env * u) == trace_all() of the tensor with u applied on either side.
  ComplexMatrix env_matrix(std::span<const std::size_t> location) const;

  cplx trace_all() const { return trace(data_); }

  // Diagnostics only.
  std::size_t left_applications() const { return left_count_; }
  std::size_t right_applications() const { return right_count_; }

 private:
  std::size_t num_qubits_ = 0;
  ComplexMatrix data_;
  std::size_t left_count_ = 0;
  std::size_t right_count_ = 0;
};

/// Tensor for target V and circuit gates: E_p ... E_1 V^dagger, so
/// trace_all() == Tr(V^dagger U).
CircuitTensor init_circuit_tensor(const ComplexMatrix& target, const Circuit& circuit);

/// Same, with the gates' current unitaries supplied explicitly (one per gate).
CircuitTensor init_circuit_tensor(const ComplexMatrix& target, const Circuit& circuit,
                                  std::span<const ComplexMatrix> unitaries);

inline CircuitTensor apply_right(CircuitTensor ct, const ComplexMatrix& u,
                                 std::span<const std::size_t> location,
                                 bool inverse = false) {
  ct.apply_right(u, location, inverse);
  return ct;
}

inline CircuitTensor apply_left(CircuitTensor ct, const ComplexMatrix& u,
                                std::span<const std::size_t> location,
                                bool inverse = false) {
  ct.apply_left(u, location, inverse);
  return ct;
}

inline ComplexMatrix calc_env_mat(const CircuitTensor& ct,
                                  std::span<const std::size_t> location) {
  return ct.env_matrix(location);
}

inline cplx trace_all(const CircuitTensor& ct) { return ct.trace_all(); }

/// Rebuilds from scratch; drops the rounding accumulated by apply/unapply.
inline CircuitTensor reset_circuit_tensor(const ComplexMatrix& target,
                                          const Circuit& circuit) {
  return init_circuit_tensor(target, circuit);
}

}  // namespace unifactor
