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

#include "unifactor/linalg.hpp"

namespace unifactor {

/// 1 - |Tr(V^dagger U)| / N. Phase invariant, in [0, 1].
double distance_delta(const ComplexMatrix& u, const ComplexMatrix& v);

/// 1 - Re Tr(V^dagger U) / N. Phase sensitive; ranges over [0, 2]
/// (V against -V gives 2), so it is not clamped.
double distance_delta_f(const ComplexMatrix& u, const ComplexMatrix& v);

/// sqrt(1 - |Tr(V^dagger U)|^2 / N^2).
double distance_delta_p(const ComplexMatrix& u, const ComplexMatrix& v);

/// ||U - V||_F^2 through the trace identity 2N (1 - Re Tr(V^dagger U) / N).
double frob_cost(const ComplexMatrix& u, const ComplexMatrix& v);

// The same quantities from a precomputed trace Tr(V^dagger U) and dimension.
double delta_from_trace(cplx tr, double dim);
double delta_f_from_trace(cplx tr, double dim);
double delta_p_from_trace(cplx tr, double dim);
double frob_cost_from_trace(cplx tr, double dim);

}  // namespace unifactor
