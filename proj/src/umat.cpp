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

#include "unifactor/umat.hpp"

#include <bit>
#include <cstdio>
#include <json.hpp>

namespace unifactor {

namespace {

std::string format_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_part(std::string& out, const ComplexMatrix& u, bool imag) {
  out += '[';
  for (std::size_t r = 0; r < u.rows(); ++r) {
    if (r) out += ',';
    out += '[';
    for (std::size_t c = 0; c < u.cols(); ++c) {
      if (c) out += ',';
      out += format_17(imag ? u(r, c).imag() : u(r, c).real());
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

std::string write_umat(const ComplexMatrix& u) {
  if (!u.is_square() || !std::has_single_bit(u.rows())) {
    throw DimensionError("write_umat: matrix must be 2^n x 2^n");
  }
  std::string out = "{\"n\": " + std::to_string(std::countr_zero(u.rows())) + ", \"re\": ";
  write_part(out, u, false);
  out += ", \"im\": ";
  write_part(out, u, true);
  out += "}\n";
  return out;
}

ComplexMatrix read_umat(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("umat-json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("re") ||
      !doc.contains("im")) {
    throw std::invalid_argument("umat-json: expected object with n, re, im");
  }
  if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() > 16) {
    throw std::invalid_argument("umat-json: n must be a small non-negative integer");
  }
  const std::size_t n = doc["n"].get<std::size_t>();
  const std::size_t dim = std::size_t{1} << n;
  const auto& re = doc["re"];
  const auto& im = doc["im"];
  auto check_rows = [&](const nlohmann::json& part, const char* name) {
    if (!part.is_array() || part.size() != dim) {
      throw std::invalid_argument(std::string("umat-json: '") + name + "' must have " +
                                  std::to_string(dim) + " rows");
    }
    for (const auto& row : part) {
      if (!row.is_array() || row.size() != dim) {
        throw std::invalid_argument(std::string("umat-json: '") + name +
                                    "' rows must have " + std::to_string(dim) +
                                    " entries");
      }
      for (const auto& v : row) {
        if (!v.is_number()) {
          throw std::invalid_argument(std::string("umat-json: non-numeric entry in '") +
                                      name + "'");
        }
      }
    }
  };
  check_rows(re, "re");
  check_rows(im, "im");
  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      out(r, c) = cplx{re[r][c].get<double>(), im[r][c].get<double>()};
  return out;
}

}  // namespace unifactor
