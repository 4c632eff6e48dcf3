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

#include "unifactor/distance.hpp"

#include <algorithm>
#include <cmath>

namespace unifactor {

double delta_from_trace(cplx tr, double dim) { return 1.0 - std::abs(tr) / dim; }

double delta_f_from_trace(cplx tr, double dim) { return 1.0 - tr.real() / dim; }

double delta_p_from_trace(cplx tr, double dim) {
  const double overlap = std::abs(tr) / dim;
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

double frob_cost_from_trace(cplx tr, double dim) {
  return 2.0 * dim * (1.0 - tr.real() / dim);
}

namespace {

double dim_of(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (!u.is_square() || u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("distance: unitaries must be square with equal dimensions");
  }
  return static_cast<double>(u.rows());
}

}  // namespace

double distance_delta(const ComplexMatrix& u, const ComplexMatrix& v) {
  const double dim = dim_of(u, v);
  return delta_from_trace(hs_inner(v, u), dim);
}

double distance_delta_f(const ComplexMatrix& u, const ComplexMatrix& v) {
  const double dim = dim_of(u, v);
  return delta_f_from_trace(hs_inner(v, u), dim);
}

double distance_delta_p(const ComplexMatrix& u, const ComplexMatrix& v) {
  const double dim = dim_of(u, v);
  return delta_p_from_trace(hs_inner(v, u), dim);
}

double frob_cost(const ComplexMatrix& u, const ComplexMatrix& v) {
  const double dim = dim_of(u, v);
  return frob_cost_from_trace(hs_inner(v, u), dim);
}

}  // namespace unifactor
