#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ctbands/errors.hpp"

namespace ctbands {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage, value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  /// Column j as a contiguous vector.
  std::vector<Complex> col(std::size_t j) const {
    std::vector<Complex> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
    return v;
  }

  void set_col(std::size_t j, std::span<const Complex> v) {
    for (std::size_t i = 0; i < rows_; ++i) data_[i * cols_ + j] = v[i];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
  }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex a = (*this)(i, k);
        if (a == Complex{}) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    }
    return out;
  }

  ComplexMatrix operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionMismatch("matrix sum: shapes differ");
    ComplexMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
    return out;
  }

  ComplexMatrix operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionMismatch("matrix difference: shapes differ");
    ComplexMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
    return out;
  }

  /// M · v
  std::vector<Complex> apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix apply: vector length differs");
    std::vector<Complex> out(rows_, Complex{});
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex acc{};
      const Complex* row = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  double fro_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max_ij |M[i][j] - conj(M[j][i])|, the deviation from Hermitian symmetry.
  double hermiticity_error() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  bool is_hermitian(double tol = 1e-12) const {
    return square() && hermiticity_error() <= tol * max_abs();
  }

  bool all_finite() const {
    for (const Complex& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  bool operator==(const ComplexMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// -- small vector helpers used throughout ------------------------------------

/// <a|b> with the first argument conjugated.
inline Complex vdot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double vnorm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline void vscale(std::span<Complex> v, Complex factor) {
  for (Complex& z : v) z *= factor;
}

inline void vaxpy(std::span<Complex> y, Complex alpha, std::span<const Complex> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace ctbands
