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

#include "unifactor/tensor.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "local_layout.hpp"

namespace unifactor {

namespace {

// w = u or u^dagger, materialised once per application (at most 2^m x 2^m).
ComplexMatrix oriented(const ComplexMatrix& u, bool inverse) {
  return inverse ? dagger(u) : u;
}

void check_gate(const ComplexMatrix& u, std::span<const std::size_t> location) {
  const std::size_t dim = std::size_t{1} << location.size();
  if (u.rows() != dim || u.cols() != dim) {
    throw DimensionError("gate matrix is " + std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + " but location has " +
                         std::to_string(location.size()) + " qubits");
  }
}

}  // namespace

CircuitTensor::CircuitTensor(ComplexMatrix data) : data_(std::move(data)) {
  if (!data_.is_square() || !std::has_single_bit(data_.rows())) {
    throw DimensionError("circuit tensor must be 2^n x 2^n");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(data_.rows()));
}

void CircuitTensor::apply_right(const ComplexMatrix& u,
                                std::span<const std::size_t> location, bool inverse) {
  check_gate(u, location);
  const auto layout = detail::make_layout(location, num_qubits_);
  const ComplexMatrix w = oriented(u, inverse);
  const std::size_t local = layout.offsets.size();
  const std::size_t dim = data_.rows();
  std::vector<cplx> gathered(local);
  for (std::size_t row = 0; row < dim; ++row) {
    cplx* row_ptr = &data_(row, 0);
    for (const std::size_t base : layout.rest) {
      for (std::size_t b = 0; b < local; ++b) gathered[b] = row_ptr[base + layout.offsets[b]];
      for (std::size_t a = 0; a < local; ++a) {
        cplx s = 0.0;
        for (std::size_t b = 0; b < local; ++b) s += gathered[b] * w(b, a);
        row_ptr[base + layout.offsets[a]] = s;
      }
    }
  }
  ++right_count_;
}

void CircuitTensor::apply_left(const ComplexMatrix& u,
                               std::span<const std::size_t> location, bool inverse) {
  check_gate(u, location);
  const auto layout = detail::make_layout(location, num_qubits_);
  const ComplexMatrix w = oriented(u, inverse);
  const std::size_t local = layout.offsets.size();
  const std::size_t dim = data_.cols();
  std::vector<cplx> rows(local * dim);
  for (const std::size_t base : layout.rest) {
    std::fill(rows.begin(), rows.end(), cplx{});
    for (std::size_t a = 0; a < local; ++a) {
      cplx* dst = &rows[a * dim];
      for (std::size_t b = 0; b < local; ++b) {
        const cplx wab = w(a, b);
        if (wab == cplx{}) continue;
        const cplx* src = &data_(base + layout.offsets[b], 0);
        for (std::size_t j = 0; j < dim; ++j) dst[j] += wab * src[j];
      }
    }
    for (std::size_t a = 0; a < local; ++a) {
      std::copy_n(&rows[a * dim], dim, &data_(base + layout.offsets[a], 0));
    }
  }
  ++left_count_;
}

ComplexMatrix CircuitTensor::env_matrix(std::span<const std::size_t> location) const {
  const auto layout = detail::make_layout(location, num_qubits_);
  const std::size_t local = layout.offsets.size();
  ComplexMatrix env(local, local);
  for (std::size_t b = 0; b < local; ++b) {
    for (std::size_t a = 0; a < local; ++a) {
      cplx s = 0.0;
      for (const std::size_t base : layout.rest) {
        s += data_(base + layout.offsets[b], base + layout.offsets[a]);
      }
      env(b, a) = s;
    }
  }
  return env;
}

CircuitTensor init_circuit_tensor(const ComplexMatrix& target, const Circuit& circuit) {
  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) unitaries.push_back(gate_unitary(g));
  return init_circuit_tensor(target, circuit, unitaries);
}

CircuitTensor init_circuit_tensor(const ComplexMatrix& target, const Circuit& circuit,
                                  std::span<const ComplexMatrix> unitaries) {
  const std::size_t dim = std::size_t{1} << circuit.num_qubits;
  if (!target.is_square() || target.rows() != dim) {
    throw DimensionError("target is " + std::to_string(target.rows()) + "x" +
                         std::to_string(target.cols()) + " but circuit has " +
                         std::to_string(circuit.num_qubits) + " qubits");
  }
  if (unitaries.size() != circuit.gates.size()) {
    throw DimensionError("init_circuit_tensor: one unitary per gate required");
  }
  CircuitTensor ct(dagger(target));
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    ct.apply_left(unitaries[k], circuit.gates[k].location);
  }
  return ct;
}

}  // namespace unifactor
