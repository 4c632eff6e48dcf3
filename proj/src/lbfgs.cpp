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

#include "unifactor/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace unifactor {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

void check_finite(double f, std::span<const double> g) {
  if (!std::isfinite(f)) throw NonFiniteError("lbfgs: objective returned non-finite cost");
  for (double v : g) {
    if (!std::isfinite(v)) throw NonFiniteError("lbfgs: objective returned non-finite gradient");
  }
}

std::vector<double> two_loop_direction(const std::deque<Correction>& history,
                                       std::span<const double> grad) {
  std::vector<double> q(grad.begin(), grad.end());
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    const auto& c = history[i];
    alpha[i] = c.rho * dot(c.s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * c.y[j];
  }
  if (!history.empty()) {
    const auto& last = history.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& c = history[i];
    const double b = c.rho * dot(c.y, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += c.s[j] * (alpha[i] - b);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

std::string_view lbfgs_status_name(LbfgsStatus s) {
  switch (s) {
    case LbfgsStatus::GradTol: return "GradTol";
    case LbfgsStatus::CostTol: return "CostTol";
    case LbfgsStatus::MaxEvals: return "MaxEvals";
    case LbfgsStatus::MaxIterations: return "MaxIterations";
    case LbfgsStatus::LineSearchFailed: return "LineSearchFailed";
    case LbfgsStatus::Cancelled: return "Cancelled";
  }
  return "?";
}

LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& opts,
                           const std::function<bool()>& should_stop) {
  const std::size_t n = x0.size();
  LbfgsResult res;
  res.x = std::move(x0);
  std::vector<double> grad(n);
  res.cost = objective(res.x, grad);
  res.evals = 1;
  check_finite(res.cost, grad);
  res.cost_trace.push_back(res.cost);

  std::deque<Correction> history;
  std::vector<double> x_new(n);
  std::vector<double> g_new(n);
  for (;;) {
    if (res.cost <= opts.cost_tol) {
      res.status = LbfgsStatus::CostTol;
      break;
    }
    const double gnorm = std::sqrt(dot(grad, grad));
    if (gnorm <= opts.grad_tol) {
      res.status = LbfgsStatus::GradTol;
      break;
    }
    if (res.evals >= opts.max_evals) {
      res.status = LbfgsStatus::MaxEvals;
      break;
    }
    if (res.iterations >= opts.max_iterations) {
      res.status = LbfgsStatus::MaxIterations;
      break;
    }
    if (should_stop && should_stop()) {
      res.status = LbfgsStatus::Cancelled;
      break;
    }

    std::vector<double> dir = two_loop_direction(history, grad);
    double slope = dot(grad, dir);
    if (!(slope < 0.0)) {
      history.clear();
      dir.assign(grad.begin(), grad.end());
      for (double& v : dir) v = -v;
      slope = -gnorm * gnorm;
    }
    double step = history.empty() ? std::min(opts.initial_step, 1.0 / gnorm)
                                  : opts.initial_step;

    bool accepted = false;
    double f_new = 0.0;
    for (std::size_t bt = 0; bt < opts.max_backtracks && res.evals < opts.max_evals; ++bt) {
      for (std::size_t j = 0; j < n; ++j) x_new[j] = res.x[j] + step * dir[j];
      f_new = objective(x_new, g_new);
      ++res.evals;
      check_finite(f_new, g_new);
      if (f_new <= res.cost + opts.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) {
      if (!history.empty() && res.evals < opts.max_evals) {
        history.clear();
        continue;
      }
      res.status = res.evals >= opts.max_evals ? LbfgsStatus::MaxEvals
                                               : LbfgsStatus::LineSearchFailed;
      break;
    }

    Correction c{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      c.s[j] = x_new[j] - res.x[j];
      c.y[j] = g_new[j] - grad[j];
    }
    const double sy = dot(c.s, c.y);
    if (sy > 1e-300 && sy > 1e-12 * std::sqrt(dot(c.s, c.s) * dot(c.y, c.y))) {
      c.rho = 1.0 / sy;
      history.push_back(std::move(c));
      if (history.size() > opts.memory) history.pop_front();
    }
    res.x.swap(x_new);
    grad.swap(g_new);
    res.cost = f_new;
    ++res.iterations;
    res.cost_trace.push_back(res.cost);
  }
  return res;
}

}  // namespace unifactor
