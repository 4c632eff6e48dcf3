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

#include "unifactor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace unifactor {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

// Column helpers for the Jacobi SVD; matrices are row-major so columns are
// strided.
double column_norm2(const ComplexMatrix& a, std::size_t c) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) s += std::norm(a(r, c));
  return s;
}

cplx column_dot(const ComplexMatrix& a, std::size_t p, std::size_t q) {
  cplx s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, p)) * a(r, q);
  return s;
}

// Column q is first multiplied by e^{-i phi} so the pair overlap is real,
// then a real Givens rotation zeroes it.
void rotate_columns(ComplexMatrix& a, std::size_t p, std::size_t q, double c,
                    double s, cplx phase_conj) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const cplx ap = a(r, p);
    const cplx aq = a(r, q) * phase_conj;
    a(r, p) = c * ap - s * aq;
    a(r, q) = s * ap + c * aq;
  }
}

// Modified Gram-Schmidt of column j against columns [0, j). Returns the
// residual norm before normalisation.
double orthonormalize_column(ComplexMatrix& a, std::size_t j) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < j; ++k) {
      const cplx proj = column_dot(a, k, j);
      for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= proj * a(r, k);
    }
  }
  const double nrm = std::sqrt(column_norm2(a, j));
  if (nrm > 0.0) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) /= nrm;
  }
  return nrm;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: entry count " +
                         std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

cplx trace(const ComplexMatrix& a) {
  cplx s = 0.0;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < n; ++i) s += a(i, i);
  return s;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  cplx s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return s;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += std::conj(m(k, i)) * m(k, j);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

Svd complex_svd(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw DimensionError("complex_svd: square input required");
  }
  constexpr int kMaxSweeps = 80;
  constexpr double kOrthTol = 1e-15;
  const std::size_t n = m.rows();

  ComplexMatrix work = m;
  ComplexMatrix right = ComplexMatrix::identity(n);

  bool converged = (n <= 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_norm2(work, p);
        const double beta = column_norm2(work, q);
        const cplx gamma = column_dot(work, p, q);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kOrthTol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const cplx phase_conj = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(work, p, q, c, s, phase_conj);
        rotate_columns(right, p, q, c, s, phase_conj);
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("complex_svd: Jacobi sweeps did not converge");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_norm2(work, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  Svd out{ComplexMatrix(n, n), std::vector<double>(n), ComplexMatrix(n, n)};
  const double sigma_max = n ? sigma[order[0]] : 0.0;
  const double cutoff = sigma_max * 1e-13;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular[j] = sigma[src];
    for (std::size_t r = 0; r < n; ++r) out.right(r, j) = right(r, src);
    if (sigma[src] > cutoff && sigma[src] > 0.0) {
      for (std::size_t r = 0; r < n; ++r) out.left(r, j) = work(r, src) / sigma[src];
      ++rank;
    }
  }

  // Re-orthonormalise the well-determined left vectors, then complete the
  // basis for the numerically null part from the standard basis.
  for (std::size_t j = 0; j < rank; ++j) orthonormalize_column(out.left, j);
  for (std::size_t j = rank; j < n; ++j) {
    std::size_t best = 0;
    double best_norm = -1.0;
    ComplexMatrix trial = out.left;
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t r = 0; r < n; ++r) trial(r, j) = (r == e) ? 1.0 : 0.0;
      const double nrm = orthonormalize_column(trial, j);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = e;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.left(r, j) = (r == best) ? 1.0 : 0.0;
    orthonormalize_column(out.left, j);
  }
  return out;
}

ComplexMatrix polar_unitary_of_adjoint(const ComplexMatrix& env) {
  const Svd svd = complex_svd(env);
  return matmul(svd.right, dagger(svd.left));
}

ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix q(dim, dim);
  for (auto& v : q.data()) v = cplx{normal(rng), normal(rng)};
  // Gram-Schmidt QR; R's diagonal is the pre-normalisation norm, which is
  // real positive, so Q already carries the phase-fixed convention.
  for (std::size_t j = 0; j < dim; ++j) orthonormalize_column(q, j);
  return q;
}

}  // namespace unifactor
