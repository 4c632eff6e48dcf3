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

#include "unifactor/baseline.hpp"

#include <stdexcept>
#include <string>

#include "unifactor/distance.hpp"
#include "unifactor/multistart.hpp"
#include "unifactor/qfactor.hpp"
#include "unifactor/tensor.hpp"

namespace unifactor {

namespace {

void require_no_variable_gates(const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::VariableUnitary) {
      throw std::invalid_argument(
          "baseline optimizer cannot handle VariableUnitary gates");
    }
  }
}

Termination map_status(LbfgsStatus s) {
  switch (s) {
    case LbfgsStatus::CostTol: return Termination::DistTol;
    case LbfgsStatus::GradTol:
    case LbfgsStatus::LineSearchFailed: return Termination::PlateauShort;
    case LbfgsStatus::MaxEvals:
    case LbfgsStatus::MaxIterations: return Termination::MaxIter;
    case LbfgsStatus::Cancelled: return Termination::Cancelled;
  }
  return Termination::MaxIter;
}

}  // namespace

CostGrad cost_and_grad(const Circuit& circuit, std::span<const double> params,
                       const ComplexMatrix& target) {
  if (params.size() != circuit.num_params()) {
    throw std::invalid_argument("cost_and_grad: expected " +
                                std::to_string(circuit.num_params()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  require_no_variable_gates(circuit);
  Circuit at = circuit;
  at.set_params(params);
  const double dim = static_cast<double>(std::size_t{1} << at.num_qubits);

  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(at.gates.size());
  for (const auto& g : at.gates) unitaries.push_back(gate_unitary(g));
  CircuitTensor ct = init_circuit_tensor(target, at, unitaries);

  CostGrad out;
  out.trace = ct.trace_all();
  out.cost = delta_f_from_trace(out.trace, dim);
  out.grad.assign(params.size(), 0.0);
  std::size_t offset = params.size();
  for (std::size_t k = at.gates.size(); k-- > 0;) {
    const LocatedGate& g = at.gates[k];
    ct.apply_left(unitaries[k], g.location, /*inverse=*/true);
    if (g.is_parameterized()) {
      offset -= g.params.size();
      const ComplexMatrix env = ct.env_matrix(g.location);
      const auto partials = gate_grad(g);
      for (std::size_t i = 0; i < partials.size(); ++i) {
        out.grad[offset + i] = -trace(matmul(env, partials[i])).real() / dim;
      }
    }
    ct.apply_right(unitaries[k], g.location);
  }
  return out;
}

InstantiationResult baseline_single(const Circuit& circuit, const ComplexMatrix& target,
                                    const BaselineOptions& opts,
                                    const RunControl& control) {
  opts.hyper.validate();
  circuit.validate();
  require_no_variable_gates(circuit);
  const std::size_t dim = std::size_t{1} << circuit.num_qubits;
  if (!target.is_square() || target.rows() != dim) {
    throw DimensionError("baseline: target does not match circuit width");
  }

  LbfgsOptions lo;
  lo.memory = opts.memory;
  lo.max_evals = opts.max_evals;
  lo.max_iterations = opts.hyper.max_iter;
  lo.grad_tol = opts.grad_tol;
  lo.cost_tol = opts.hyper.dist_tol;
  const std::size_t k = circuit.num_params();
  // x = (params, phi); cost is Delta_f against e^{i phi} V
  const Objective objective = [&](std::span<const double> x, std::span<double> grad) {
    const ComplexMatrix phased = std::polar(1.0, x[k]) * target;
    CostGrad cg = cost_and_grad(circuit, x.first(k), phased);
    std::copy(cg.grad.begin(), cg.grad.end(), grad.begin());
    grad[k] = -cg.trace.imag() / static_cast<double>(dim);
    return cg.cost;
  };
  std::vector<double> x0 = circuit.params();
  x0.push_back(0.0);
  LbfgsResult lr = lbfgs_minimize(objective, std::move(x0), lo,
                                  [&] { return control.stop_requested(); });
  lr.x.pop_back();

  InstantiationResult result;
  result.final_gates = circuit;
  result.final_gates.set_params(lr.x);
  result.iterations = lr.iterations;
  result.termination = map_status(lr.status);
  result.cost_trace = lr.cost_trace;
  finalize_result(result, target);
  if (result.distance_delta <= opts.hyper.dist_tol) result.termination = Termination::DistTol;
  return result;
}

InstantiationResult baseline_instantiate(const Circuit& circuit, const ComplexMatrix& target,
                                         const BaselineOptions& opts,
                                         const RunControl& control) {
  opts.hyper.validate();
  require_no_variable_gates(circuit);
  return run_multistart(
      opts.hyper.multistarts, resolve_seed(opts.hyper), opts.hyper.workers, control,
      [&](std::uint64_t seed, const RunControl& ctl) {
        return baseline_single(random_init(circuit, seed), target, opts, ctl);
      });
}

}  // namespace unifactor
