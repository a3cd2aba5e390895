// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file matrix.hpp
 * @brief Dense complex matrices and a cyclic Jacobi Hermitian eigensolver.
 *
 * Matrices here are small (at most 4096 x 4096, the 12-mode Fock space), so
 * storage is a flat row-major vector with no expression templates.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "carfock/errors.hpp"

namespace carfock {

using Complex = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix zeros(std::size_t n) { return CMatrix(n, n); }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<Complex>& data() const noexcept { return data_; }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest entrywise deviation from Hermiticity, max |A_ij - conj(A_ji)|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
  }

  bool is_hermitian(double tol) const {
    return is_square() && hermiticity_defect() <= tol;
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw SizeError("matrix product shape mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw SizeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; shapes must agree.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SizeError("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double sum() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  }
};

inline constexpr std::size_t kMaxEigenDimension = 4096;
inline constexpr int kMaxJacobiSweeps = 100;

/**
 * Cyclic Jacobi diagonalization of a complex Hermitian matrix.
 *
 * Each (p, q) rotation first removes the phase of a_pq with a diagonal
 * unitary, then applies the real symmetric Jacobi rotation that zeroes the
 * now-real off-diagonal pair. Sweeps stop once the off-diagonal Frobenius
 * norm falls below 1e-13 * max(1, ||A||_F).
 *
 * Throws HermiticityError if the input deviates from Hermitian by more than
 * 1e-8, SizeError above 4096 rows, ConvergenceError after 100 sweeps.
 */
inline Spectrum eig_hermitian(const CMatrix& m) {
  if (!m.is_square()) throw HermiticityError("eigensolver needs a square matrix");
  const std::size_t n = m.rows();
  if (n > kMaxEigenDimension) throw SizeError("eigensolver dimension exceeds 4096");
  if (const double d = m.hermiticity_defect(); d > 1e-8)
    throw HermiticityError("matrix is not Hermitian (defect " + std::to_string(d) + ")");

  CMatrix a = m;
  // Symmetrize so that round-off in the input does not leak into the result.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }

  const double threshold = 1e-13 * std::max(1.0, a.frobenius_norm());
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() >= threshold) {
    if (sweep++ == kMaxJacobiSweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge in 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- A U with U = [[c, s], [-s e^{-i theta}, c e^{-i theta}]].
        const Complex sq = s * std::conj(phase);
        const Complex cq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - sq * akq;
          a(k, q) = s * akp + cq * akq;
        }
        // A <- U^H A.
        const Complex sp = s * phase;
        const Complex cp = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = s * apk + cp * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  Spectrum out;
  out.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues.push_back(a(i, i).real());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

}  // namespace carfock
