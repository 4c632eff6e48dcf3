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
#include <vector>

#include "unifactor/circuit.hpp"
#include "unifactor/instantiation.hpp"
#include "unifactor/lbfgs.hpp"

namespace unifactor {

struct CostGrad {
  double cost = 0.0;
  std::vector<double> grad;
  /// Tr(V^dagger C(params)).
  cplx trace;
};

/// cost = 1 - Re Tr(V^dagger C(params)) / N and its gradient over the
/// circuit's U3/RZ parameters (gate order, then per-gate order).
///
/// Each partial replaces one gate by its derivative; the products on either
/// side are never formed densely. Instead the gates are peeled off the
/// circuit tensor one at a time, leaving the environment of each gate.
CostGrad cost_and_grad(const Circuit& circuit, std::span<const double> params,
                       const ComplexMatrix& target);

struct BaselineOptions {
  HyperParams hyper;
  std::size_t memory = 10;
  std::size_t max_evals = 20000;
  double grad_tol = 1e-14;
};

/// One L-BFGS run from the circuit's current parameters. Iterations are
/// capped by hyper.max_iter and the cost target is hyper.dist_tol.
///
/// U3/RZ gates fix the global phase of C(params), so a target that differs
/// from the circuit's by a phase could never reach cost 0. The run therefore
/// also optimises one extra phase phi against e^{i phi} V (starting at 0);
/// phi is dropped from the emitted circuit.
InstantiationResult baseline_single(const Circuit& circuit, const ComplexMatrix& target,
                                    const BaselineOptions& opts,
                                    const RunControl& control = {});

/// Multistart wrapper with the same seeding and selection as the QFactor
/// path. Throws std::invalid_argument for circuits with VariableUnitary gates.
InstantiationResult baseline_instantiate(const Circuit& circuit, const ComplexMatrix& target,
                                         const BaselineOptions& opts,
                                         const RunControl& control = {});

}  // namespace unifactor
