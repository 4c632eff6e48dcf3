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
#include <cstdint>
#include <functional>

#include "unifactor/instantiation.hpp"

namespace unifactor {

using SingleStart =
    std::function<InstantiationResult(std::uint64_t seed, const RunControl& control)>;

/// Runs `starts` independent starts with child seeds seed, seed+1, ... on a
/// bounded worker pool.
///
/// Selection is independent of thread interleaving: if any start reaches
/// DistTol, the lowest-indexed such start wins and only higher-indexed
/// starts are cancelled; otherwise every start runs to completion and the
/// smallest Delta wins (ties to the lower index).
InstantiationResult run_multistart(std::size_t starts, std::uint64_t seed,
                                   std::size_t workers, const RunControl& control,
                                   const SingleStart& single);

/// Resolves 0 to the hardware concurrency (at least 1).
std::size_t resolve_workers(std::size_t requested);

/// The seed in `hyper`, or a fresh one from std::random_device.
std::uint64_t resolve_seed(const HyperParams& hyper);

}  // namespace unifactor
