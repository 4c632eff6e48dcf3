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

#include <cstdint>
#include <span>
#include <vector>

#include "unifactor/circuit.hpp"
#include "unifactor/instantiation.hpp"
#include "unifactor/linalg.hpp"
#include "unifactor/tensor.hpp"

namespace unifactor {

/// theta maximising Re Tr(env RZ(theta)) = Re(e00) + Re(e11) cos(theta) -
/// Im(e11) sin(theta), i.e. atan2(-Im e11, Re e11).
double optimal_rz_angle(const ComplexMatrix& env);

/// Local update of one gate given its environment.
///
/// The update works on (1 - beta) env + beta current^dagger. VariableUnitary
/// and U3 gates take the SVD optimum Y X^dagger; a U3 gate's state is kept
/// as the full 2x2 unitary including its global phase, which is what lets
/// it reach the unrestricted optimum (the phase is dropped when angles are
/// extracted). RZ gets the closed-form angle and stays exactly diag(1, e^{i theta}).
ComplexMatrix optimize_gate(const LocatedGate& gate, const ComplexMatrix& current,
                            const ComplexMatrix& env, double beta);

/// One iteration: a backward pass (last gate to first) then a forward pass,
/// each taking a gate off one end of the tensor, optimising it against its
/// environment and putting it back on the other end. CNOT and constant
/// gates are moved but never changed.
void two_sided_sweep(CircuitTensor& ct, const Circuit& circuit,
                     std::vector<ComplexMatrix>& unitaries, double beta);

/// U3/RZ angles uniform in (-pi, pi], VariableUnitary gates Haar random.
Circuit random_init(const Circuit& circuit, std::uint64_t seed);

/// Writes the optimiser's per-gate unitaries back as gate values.
Circuit circuit_from_unitaries(const Circuit& structure,
                               std::span<const ComplexMatrix> unitaries);

/// Fills the distance fields of a result from its final circuit.
void finalize_result(InstantiationResult& result, const ComplexMatrix& target);

/// Single run from the circuit's current gate values.
///
/// Termination (checked after every sweep once min_iter sweeps are done):
///   DistTol       Delta <= dist_tol
///   PlateauShort  |Delta_{i-1} - Delta_i| <= diff_tol_a + diff_tol_r * Delta_i
///   PlateauLong   Delta_{i-L} - Delta_i <= long_diff_r * Delta_{i-L}, L = long_diff_count
///   MaxIter       max_iter sweeps done
/// The tensor is rebuilt from scratch every reset_iter sweeps.
InstantiationResult qfactor_instantiate(const Circuit& circuit, const ComplexMatrix& target,
                                        const HyperParams& hyper,
                                        const RunControl& control = {});

/// hyper.multistarts runs from random_init(circuit, seed + i).
InstantiationResult multistart_instantiate(const Circuit& circuit,
                                           const ComplexMatrix& target,
                                           const HyperParams& hyper,
                                           const RunControl& control = {});

}  // namespace unifactor
