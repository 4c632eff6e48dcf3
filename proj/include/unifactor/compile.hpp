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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "unifactor/circuit.hpp"
#include "unifactor/instantiation.hpp"

namespace unifactor {

/// Widest block the partitioner will build; local unitaries are dense.
inline constexpr std::size_t kMaxBlockSize = 8;

/// A block of gates acting on a few qubits, relabelled to a local register.
struct Partition {
  /// Parent qubits in ascending order; local qubit i is qubit_subset[i].
  std::vector<std::size_t> qubit_subset;
  /// Indices of the parent gates in this block, ascending.
  std::vector<std::size_t> gate_indices;
  Circuit local_circuit;
  /// Position of the block in the emitted (dependency) order.
  std::size_t boundary = 0;
};

/// Greedy scan-line partitioning into blocks of at most k qubits.
///
/// Each open block owns its qubits exclusively. A gate joins the block that
/// owns its qubits; if its qubits are spread over several blocks they are
/// merged when the union fits, otherwise those blocks are closed and the
/// gate starts a fresh one. A gate on free qubits joins the oldest open
/// block with room. Blocks are emitted in closing order, which is a valid
/// dependency order. Throws std::invalid_argument if k is 0, exceeds
/// kMaxBlockSize, or is smaller than the widest gate.
std::vector<Partition> partition_circuit(const Circuit& circuit, std::size_t k);

/// Maps the local circuits back onto the parent register, in order.
Circuit reassemble(std::span<const Partition> partitions, std::size_t num_qubits);

enum class Optimizer { QFactor, Lbfgs };
std::string_view optimizer_name(Optimizer o);
/// Accepts "qfactor" and "lbfgs".
Optimizer parse_optimizer(std::string_view name);

/// Runs the chosen instantiator (multistart) on a circuit structure.
InstantiationResult instantiate_with(Optimizer optimizer, const Circuit& circuit,
                                     const ComplexMatrix& target, const HyperParams& hyper,
                                     const RunControl& control = {});

struct DeletionOptions {
  Optimizer optimizer = Optimizer::QFactor;
  /// dist_tol is the acceptance threshold; seed must be set.
  HyperParams hyper;
  /// Repeat the sweep until nothing more can be removed.
  bool fixpoint = false;
  /// When a lone CNOT cannot go, also try it together with the next gate
  /// on the same wires if that is an identical CNOT.
  bool pair_deletion = true;
};

struct DeletionResult {
  Partition partition;
  /// Delta(optimised local unitary, original local unitary).
  double delta = 0.0;
  std::size_t deleted = 0;
  std::size_t attempts = 0;
  bool budget_exhausted = false;
};

/// Left-to-right sweep: drop each gate in turn, re-instantiate the rest
/// against the block's original unitary and keep the removal when
/// Delta <= dist_tol. Instantiator errors count as a failed removal.
DeletionResult delete_gates_pass(const Partition& partition, const DeletionOptions& opts,
                                 const RunControl& control = {});

struct CompileOptions {
  std::size_t block_size = 3;
  Optimizer optimizer = Optimizer::QFactor;
  HyperParams hyper;
  /// Partitions processed concurrently; 0 means hardware concurrency.
  std::size_t workers = 0;
  std::optional<std::chrono::milliseconds> time_budget;
  bool fixpoint = false;
  bool pair_deletion = true;
  /// Dense end-to-end check; only performed for circuits of at most 8 qubits.
  bool verify = true;
};

struct PartitionReport {
  std::vector<std::size_t> qubits;
  std::size_t gates_before = 0;
  std::size_t gates_after = 0;
  double delta = 0.0;
  bool processed = false;
};

struct CompileReport {
  GateCounts before;
  GateCounts after;
  std::vector<PartitionReport> partitions;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  bool budget_exhausted = false;
  /// Delta(original, optimised) when verified.
  std::optional<double> full_delta;

  /// Percent of U3 (resp. CNOT) gates removed; 0 when there were none.
  double u3_reduction_percent() const;
  double cnot_reduction_percent() const;
};

struct CompileResult {
  Circuit circuit;
  CompileReport report;
};

/// Partition, run the deletion pass on every block in parallel and
/// reassemble. Deterministic for a fixed hyper.seed regardless of worker
/// count, as long as the time budget does not expire.
CompileResult optimize_circuit(const Circuit& circuit, const CompileOptions& opts,
                               const RunControl& control = {});

}  // namespace unifactor
