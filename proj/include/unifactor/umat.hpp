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

#include <string>
#include <string_view>

#include "unifactor/linalg.hpp"

namespace unifactor {

// umat-json: {"n": <qubits>, "re": [[...]], "im": [[...]]}, 2^n x 2^n,
// row-major, every number written with 17 significant digits.

std::string write_umat(const ComplexMatrix& u);

/// Throws std::invalid_argument on malformed JSON or inconsistent shape.
ComplexMatrix read_umat(std::string_view text);

}  // namespace unifactor
