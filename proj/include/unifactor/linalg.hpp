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

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace unifactor {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of complex doubles. Storage is interleaved
/// (re, im) pairs, which is what std::complex guarantees.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||M^dagger M - I||_max <= tol.
bool is_unitary(const ComplexMatrix& m, double tol = 1e-9);

struct Svd {
  ComplexMatrix left;             // X
  std::vector<double> singular;   // D, descending
  ComplexMatrix right;            // Y, so that M = X diag(D) Y^dagger
};

/// One-sided (Hestenes) Jacobi SVD of a square complex matrix. Throws
/// ConvergenceError if the sweep cap is hit.
Svd complex_svd(const ComplexMatrix& m);

/// Returns Y X^dagger for env = X D Y^dagger: the unitary u maximizing
/// Re Tr(env u).
ComplexMatrix polar_unitary_of_adjoint(const ComplexMatrix& env);

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded into Q.
ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

}  // namespace unifactor
