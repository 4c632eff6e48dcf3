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

#include "unifactor/qfactor.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "unifactor/distance.hpp"
#include "unifactor/multistart.hpp"

namespace unifactor {

double optimal_rz_angle(const ComplexMatrix& env) {
  const cplx e11 = env(1, 1);
  return std::atan2(-e11.imag(), e11.real());
}

ComplexMatrix optimize_gate(const LocatedGate& gate, const ComplexMatrix& current,
                            const ComplexMatrix& env, double beta) {
  const std::size_t dim = std::size_t{1} << gate.arity();
  if (!env.is_square()) throw DimensionError("optimize_gate: environment is not square");
  if (env.rows() != dim || current.rows() != dim || current.cols() != dim) {
    throw DimensionError("optimize_gate: environment is " + std::to_string(env.rows()) +
                         "x" + std::to_string(env.cols()) + " for a " +
                         std::to_string(gate.arity()) + "-qubit gate");
  }
  ComplexMatrix blended = env;
  if (beta != 0.0) blended = (1.0 - beta) * env + cplx{beta} * dagger(current);
  switch (gate.kind) {
    case GateKind::VariableUnitary:
    case GateKind::U3: return polar_unitary_of_adjoint(blended);
    case GateKind::RZ: return rz_matrix(optimal_rz_angle(blended));
    default:
      throw std::invalid_argument("optimize_gate: " +
                                  std::string(gate_kind_name(gate.kind)) +
                                  " gates are not optimised");
  }
}

void two_sided_sweep(CircuitTensor& ct, const Circuit& circuit,
                     std::vector<ComplexMatrix>& unitaries, double beta) {
  const std::size_t p = circuit.gates.size();
  for (std::size_t k = p; k-- > 0;) {
    const LocatedGate& g = circuit.gates[k];
    ct.apply_left(unitaries[k], g.location, /*inverse=*/true);
    if (g.is_optimizable()) {
      unitaries[k] = optimize_gate(g, unitaries[k], ct.env_matrix(g.location), beta);
    }
    ct.apply_right(unitaries[k], g.location);
  }
  for (std::size_t k = 0; k < p; ++k) {
    const LocatedGate& g = circuit.gates[k];
    ct.apply_right(unitaries[k], g.location, /*inverse=*/true);
    if (g.is_optimizable()) {
      unitaries[k] = optimize_gate(g, unitaries[k], ct.env_matrix(g.location), beta);
    }
    ct.apply_left(unitaries[k], g.location);
  }
}

Circuit random_init(const Circuit& circuit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Circuit out = circuit;
  for (auto& g : out.gates) {
    switch (g.kind) {
      case GateKind::U3:
      case GateKind::RZ:
        for (auto& p : g.params) p = angle(rng);
        break;
      case GateKind::VariableUnitary:
        g.matrix = haar_unitary(std::size_t{1} << g.arity(), rng);
        break;
      default: break;
    }
  }
  return out;
}

Circuit circuit_from_unitaries(const Circuit& structure,
                               std::span<const ComplexMatrix> unitaries) {
  if (unitaries.size() != structure.gates.size()) {
    throw DimensionError("circuit_from_unitaries: one unitary per gate required");
  }
  Circuit out = structure;
  for (std::size_t k = 0; k < out.gates.size(); ++k) {
    LocatedGate& g = out.gates[k];
    switch (g.kind) {
      case GateKind::U3: {
        const U3Angles a = unitary_to_u3(unitaries[k]);
        g.params = {a.theta, a.phi, a.lambda};
        break;
      }
      case GateKind::RZ: g.params = {std::arg(unitaries[k](1, 1))}; break;
      case GateKind::VariableUnitary: g.matrix = unitaries[k]; break;
      default: break;
    }
  }
  return out;
}

void finalize_result(InstantiationResult& result, const ComplexMatrix& target) {
  const double dim = static_cast<double>(target.rows());
  const cplx tr = init_circuit_tensor(target, result.final_gates).trace_all();
  result.distance_delta = delta_from_trace(tr, dim);
  result.distance_frob = std::sqrt(std::max(0.0, frob_cost_from_trace(tr, dim)));
}

InstantiationResult qfactor_instantiate(const Circuit& circuit, const ComplexMatrix& target,
                                        const HyperParams& hyper,
                                        const RunControl& control) {
  hyper.validate();
  circuit.validate();
  const double dim = static_cast<double>(std::size_t{1} << circuit.num_qubits);

  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) unitaries.push_back(gate_unitary(g));
  CircuitTensor ct = init_circuit_tensor(target, circuit, unitaries);

  InstantiationResult result;
  std::vector<double>& history = result.cost_trace;
  Termination term = Termination::MaxIter;
  std::size_t it = 0;
  while (it < hyper.max_iter) {
    if (control.stop_requested()) {
      term = Termination::Cancelled;
      break;
    }
    if (it > 0 && it % hyper.reset_iter == 0) {
      ct = init_circuit_tensor(target, circuit, unitaries);
    }
    two_sided_sweep(ct, circuit, unitaries, hyper.beta);
    ++it;
    const double delta = delta_from_trace(ct.trace_all(), dim);
    history.push_back(delta);
    if (it < hyper.min_iter) continue;
    if (delta <= hyper.dist_tol) {
      term = Termination::DistTol;
      break;
    }
    if (it >= 2) {
      const double prev = history[it - 2];
      if (std::abs(prev - delta) <= hyper.diff_tol_a + hyper.diff_tol_r * delta) {
        term = Termination::PlateauShort;
        break;
      }
    }
    if (it > hyper.long_diff_count) {
      const double old = history[it - 1 - hyper.long_diff_count];
      if (old - delta <= hyper.long_diff_r * old) {
        term = Termination::PlateauLong;
        break;
      }
    }
  }

  result.final_gates = circuit_from_unitaries(circuit, unitaries);
  result.iterations = it;
  result.termination = term;
  finalize_result(result, target);
  return result;
}

InstantiationResult multistart_instantiate(const Circuit& circuit,
                                           const ComplexMatrix& target,
                                           const HyperParams& hyper,
                                           const RunControl& control) {
  hyper.validate();
  return run_multistart(
      hyper.multistarts, resolve_seed(hyper), hyper.workers, control,
      [&](std::uint64_t seed, const RunControl& ctl) {
        return qfactor_instantiate(random_init(circuit, seed), target, hyper, ctl);
      });
}

}  // namespace unifactor
