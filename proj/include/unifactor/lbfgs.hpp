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
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace unifactor {

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
  std::size_t memory = 10;
  std::size_t max_evals = 10000;
  std::size_t max_iterations = static_cast<std::size_t>(-1);
  double grad_tol = 1e-12;
  double cost_tol = 0.0;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  std::size_t max_backtracks = 60;
};

enum class LbfgsStatus { GradTol, CostTol, MaxEvals, MaxIterations, LineSearchFailed, Cancelled };

std::string_view lbfgs_status_name(LbfgsStatus s);

struct LbfgsResult {
  std::vector<double> x;
  double cost = 0.0;
  LbfgsStatus status = LbfgsStatus::MaxEvals;
  std::size_t evals = 0;
  std::size_t iterations = 0;
  /// Cost after every accepted step (starting with f(x0)).
  std::vector<double> cost_trace;
};

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Limited-memory BFGS: two-loop recursion for the direction, backtracking
/// Armijo line search for the step. Throws NonFiniteError if the objective
/// returns a NaN/inf cost or gradient.
LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& opts,
                           const std::function<bool()>& should_stop = {});

}  // namespace unifactor
