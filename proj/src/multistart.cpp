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

#include "unifactor/multistart.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace unifactor {

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::DistTol: return "DistTol";
    case Termination::PlateauShort: return "PlateauShort";
    case Termination::PlateauLong: return "PlateauLong";
    case Termination::MaxIter: return "MaxIter";
    case Termination::Cancelled: return "Cancelled";
  }
  return "?";
}

void HyperParams::validate() const {
  if (!(dist_tol > 0.0)) throw std::invalid_argument("dist_tol must be > 0");
  if (max_iter < min_iter) throw std::invalid_argument("max_iter must be >= min_iter");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  if (long_diff_count == 0) throw std::invalid_argument("long_diff_count must be positive");
  if (reset_iter == 0) throw std::invalid_argument("reset_iter must be positive");
  if (multistarts == 0) throw std::invalid_argument("multistarts must be positive");
  if (diff_tol_a < 0.0 || diff_tol_r < 0.0 || long_diff_r < 0.0) {
    throw std::invalid_argument("difference tolerances must be non-negative");
  }
}

bool RunControl::stop_requested() const {
  for (const auto* flag : cancel_flags) {
    if (flag && flag->load(std::memory_order_relaxed)) return true;
  }
  return deadline && std::chrono::steady_clock::now() >= *deadline;
}

RunControl RunControl::with_flag(const std::atomic<bool>* flag) const {
  RunControl out = *this;
  out.cancel_flags.push_back(flag);
  return out;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::uint64_t resolve_seed(const HyperParams& hyper) {
  if (hyper.seed) return *hyper.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

InstantiationResult run_multistart(std::size_t starts, std::uint64_t seed,
                                   std::size_t workers, const RunControl& control,
                                   const SingleStart& single) {
  if (starts == 0) throw std::invalid_argument("run_multistart: need at least one start");
  std::vector<std::optional<InstantiationResult>> results(starts);
  auto flags = std::make_unique<std::atomic<bool>[]>(starts);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_success{starts};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= starts) return;
      if (i > first_success.load()) continue;
      try {
        InstantiationResult r = single(seed + i, control.with_flag(&flags[i]));
        r.seed = seed + i;
        const bool hit = r.termination == Termination::DistTol;
        results[i] = std::move(r);
        if (hit) {
          std::size_t cur = first_success.load();
          while (i < cur && !first_success.compare_exchange_weak(cur, i)) {
          }
          for (std::size_t j = i + 1; j < starts; ++j) flags[j].store(true);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        for (std::size_t j = 0; j < starts; ++j) flags[j].store(true);
      }
    }
  };

  const std::size_t pool = std::min(resolve_workers(workers), starts);
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  if (first_success.load() < starts) return std::move(*results[first_success.load()]);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < starts; ++i) {
    if (!results[i]) continue;
    if (!best || results[i]->distance_delta < results[*best]->distance_delta) best = i;
  }
  return std::move(*results[*best]);
}

}  // namespace unifactor
