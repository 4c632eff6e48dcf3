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
#include <stdexcept>
#include <string>
#include <vector>

namespace unifactor::detail {

// Index bookkeeping for acting with an m-qubit operator on an n-qubit
// register without forming the 2^n expansion. The full basis index of local
// state a in "rest" block r is rest[r] + offsets[a].
struct LocalLayout {
  std::vector<std::size_t> offsets;  // 2^m
  std::vector<std::size_t> rest;     // 2^(n-m), indices with all location bits clear
};

inline std::size_t qubit_bit(std::size_t qubit, std::size_t n) {
  return std::size_t{1} << (n - 1 - qubit);
}

inline void check_location(std::span<const std::size_t> location, std::size_t n) {
  for (std::size_t i = 0; i < location.size(); ++i) {
    if (location[i] >= n) {
      throw std::out_of_range("qubit index " + std::to_string(location[i]) +
                              " out of range for " + std::to_string(n) +
                              " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (location[j] == location[i]) {
        throw std::invalid_argument("repeated qubit " +
                                    std::to_string(location[i]) +
                                    " in gate location");
      }
    }
  }
}

inline LocalLayout make_layout(std::span<const std::size_t> location,
                               std::size_t n) {
  check_location(location, n);
  const std::size_t m = location.size();
  LocalLayout out;
  out.offsets.resize(std::size_t{1} << m);
  std::size_t mask = 0;
  for (std::size_t i = 0; i < m; ++i) mask |= qubit_bit(location[i], n);
  for (std::size_t a = 0; a < out.offsets.size(); ++a) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (a & (std::size_t{1} << (m - 1 - i))) off |= qubit_bit(location[i], n);
    }
    out.offsets[a] = off;
  }
  out.rest.reserve(std::size_t{1} << (n - m));
  for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
    if ((idx & mask) == 0) out.rest.push_back(idx);
  }
  return out;
}

}  // namespace unifactor::detail
