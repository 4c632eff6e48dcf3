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

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace unifactor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoSuccess = 2;

/// Bumped whenever a report field changes meaning or disappears.
inline constexpr int kReportSchemaVersion = 1;

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Entry point shared by the binary and the tests. args[0] is the program
/// name. Returns 0 on success, 1 on usage or I/O errors and 2 when the
/// algorithm ran but did not succeed.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace unifactor::cli
