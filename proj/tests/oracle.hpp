#pragma once

// Test-side oracles kept deliberately independent of the library eigensolver:
// eigenvalues are located by scanning det(M - lambda*I) for sign changes and
// bisecting, with the determinant evaluated through an LU factorization.
// Also holds the seeded random generators and multiset comparators the suites
// share. Nothing here is compiled into the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "ctbands/matrix.hpp"

namespace oracle {

using ctbands::Complex;
using ctbands::ComplexMatrix;

/// Uniform double in [lo, hi) from the raw 32-bit stream, bypassing
/// std::uniform_real_distribution so sequences are identical on every
/// standard library.
inline double uniform(std::mt19937& gen, double lo, double hi) {
  const double u = static_cast<double>(gen()) / 4294967296.0;
  return lo + (hi - lo) * u;
}

inline ComplexMatrix random_hermitian(std::mt19937& gen, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = uniform(gen, -1.0, 1.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

inline ComplexMatrix random_complex(std::mt19937& gen, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Complex{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
  return m;
}

inline ComplexMatrix random_real(std::mt19937& gen, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(gen, -1.0, 1.0);
  return m;
}

/// Determinant by LU with partial pivoting.
inline Complex determinant(ComplexMatrix m) {
  const std::size_t n = m.rows();
  Complex det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        piv = r;
      }
    }
    if (best == 0.0) return Complex{};
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(piv, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// det(M - lambda*I), real for Hermitian M.
inline double char_det(const ComplexMatrix& m, double lambda) {
  ComplexMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  return determinant(shifted).real();
}

/// All eigenvalues of a Hermitian matrix by bracketing the sign changes of
/// the characteristic determinant inside the Gershgorin interval. Relies on
/// the scan grid separating the roots, which holds for the well-spread seeded
/// matrices the tests feed it; the caller can tell because exactly n roots
/// must come back.
inline std::vector<double> eigen_bisect(const ComplexMatrix& m, std::size_t scan_points = 4000,
                                        double tol = 1e-12) {
  const std::size_t n = m.rows();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) radius += std::abs(m(i, j));
    lo = std::min(lo, m(i, i).real() - radius);
    hi = std::max(hi, m(i, i).real() + radius);
  }
  lo -= 1e-6;
  hi += 1e-6;

  std::vector<double> roots;
  const double step = (hi - lo) / static_cast<double>(scan_points);
  double x0 = lo, f0 = char_det(m, x0);
  for (std::size_t s = 1; s <= scan_points; ++s) {
    const double x1 = lo + step * static_cast<double>(s);
    const double f1 = char_det(m, x1);
    if (f0 == 0.0) roots.push_back(x0);
    if (f0 * f1 < 0.0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = char_det(m, mid);
        if (fa * fm <= 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Max elementwise gap after sorting both lists; infinity on size mismatch.
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Complex multiset distance via lexicographic (re, im) sort. Safe when
/// values sit exactly on an axis or are separated well beyond rounding in
/// their real parts, which holds for the closed-form spectra compared here.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto lex = [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace oracle
