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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "unifactor/circuit.hpp"

namespace unifactor {

/// Knobs shared by both instantiators. Defaults are the recommended
/// starting values for the tensor-network optimizer.
struct HyperParams {
  double dist_tol = 1e-10;
  double diff_tol_a = 0.0;
  double diff_tol_r = 1e-5;
  std::size_t long_diff_count = 100;
  double long_diff_r = 0.1;
  std::size_t min_iter = 0;
  std::size_t max_iter = 100000;
  std::size_t reset_iter = 40;
  std::size_t multistarts = 8;
  std::optional<std::uint64_t> seed;
  double beta = 0.0;
  /// Worker threads for multistarts; 0 means hardware concurrency.
  std::size_t workers = 0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

enum class Termination { DistTol, PlateauShort, PlateauLong, MaxIter, Cancelled };

std::string_view termination_name(Termination t);

struct InstantiationResult {
  Circuit final_gates;
  double distance_delta = 1.0;
  /// ||U - V||_F of the emitted circuit (phase sensitive).
  double distance_frob = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::MaxIter;
  /// Delta after each iteration.
  std::vector<double> cost_trace;
  /// Seed of the start that produced this result.
  std::uint64_t seed = 0;

  bool success(double dist_tol) const { return distance_delta <= dist_tol; }
};

/// Cooperative stop signals, polled between iterations.
struct RunControl {
  std::vector<const std::atomic<bool>*> cancel_flags;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool stop_requested() const;
  RunControl with_flag(const std::atomic<bool>* flag) const;
};

}  // namespace unifactor
