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
#include <stdexcept>
#include <string>
#include <string_view>

#include "unifactor/circuit.hpp"

namespace unifactor {

/// Parse failure with a 1-based source position.
class QasmError : public std::runtime_error {
 public:
  QasmError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Accepted subset of OpenQASM 2.0:
///
///   OPENQASM 2.0;            (optional, must be version 2.0)
///   include "...";           (ignored)
///   qreg q[n];               (exactly one)
///   u3(a, b, c) q[i];        (also `u` and `U`)
///   rz(a) q[i];
///   cx q[i], q[j];           (also `CX`)
///   barrier ...;             (ignored)
///
/// Angle expressions: numeric literals, `pi`, + - * /, unary minus and
/// parentheses. `//` comments run to end of line.
Circuit parse_qasm(std::string_view text);

/// Emits the subset above with 17 significant digits per angle.
/// One-qubit ConstantUnitary/VariableUnitary gates are lowered to u3 (global
/// phase dropped); larger unitary gates throw std::invalid_argument.
std::string write_qasm(const Circuit& c);

}  // namespace unifactor
