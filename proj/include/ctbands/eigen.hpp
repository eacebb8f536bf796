#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "ctbands/errors.hpp"
#include "ctbands/matrix.hpp"

namespace ctbands {

struct EigenResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

struct SvdResult {
  std::vector<double> singular_values;  // descending, zero modes flushed to 0.0
  ComplexMatrix left_vectors;           // columns u_n (A-sublattice amplitudes)
  ComplexMatrix right_vectors;          // columns v_n (B-sublattice amplitudes)
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (i != j) s += std::norm(w(i, j));
  return std::sqrt(s);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Unconditionally stable and plenty fast for the dense sizes this library
/// meets (N up to a few hundred). Eigenvalues come back ascending with the
/// eigenvectors as matching columns.
inline EigenResult hermitian_eigen(const ComplexMatrix& m, double tol = 1e-12) {
  if (m.rows() == 0 || !m.square())
    throw DimensionMismatch("hermitian_eigen: need a nonempty square matrix");
  if (!m.is_hermitian())
    throw NotHermitian("hermitian_eigen: input fails the Hermitian symmetry check");

  const std::size_t n = m.rows();
  ComplexMatrix w = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Absolute convergence target, floored so tol = 0 still terminates.
  const double thresh = std::max(tol, 8.0 * DBL_EPSILON) * m.fro_norm();
  const double skip = thresh / static_cast<double>(n);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (detail::off_diagonal_norm(w) > thresh) {
    if (++sweep > kMaxSweeps)
      throw NoConvergence("hermitian_eigen: sweep cap exceeded");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = w(p, q);
        const double rho = std::abs(apq);
        if (rho <= skip) continue;

        // Factor out the phase of the pivot, then rotate as in the real case.
        const Complex phase = apq / rho;
        const double theta = (w(q, q).real() - w(p, p).real()) / (2.0 * rho);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Plane rotation U restricted to (p, q):
        //   [ c            s          ]
        //   [-s·conj(phase) c·conj(phase) ]
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t i = 0; i < n; ++i) {  // W <- W·U
          const Complex wip = w(i, p), wiq = w(i, q);
          w(i, p) = c * wip + uqp * wiq;
          w(i, q) = s * wip + uqq * wiq;
        }
        for (std::size_t j = 0; j < n; ++j) {  // W <- U†·W
          const Complex wpj = w(p, j), wqj = w(q, j);
          w(p, j) = c * wpj + std::conj(uqp) * wqj;
          w(q, j) = s * wpj + std::conj(uqq) * wqj;
        }
        for (std::size_t i = 0; i < n; ++i) {  // V <- V·U
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + uqp * viq;
          v(i, q) = s * vip + uqq * viq;
        }

        // Scrub rounding dust off the entries the rotation zeroes exactly.
        w(p, q) = w(q, p) = 0.0;
        w(p, p) = w(p, p).real();
        w(q, q) = w(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return w(a, a).real() < w(b, b).real();
  });

  EigenResult out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Singular value decomposition of a square coupling block, computed through
/// the Hermitian eigenproblem of Q†Q. Left vectors are recovered as Q·v/s;
/// channels whose singular value collapses below tol·s_max are flushed to an
/// exact zero mode and their left vectors completed from the standard basis.
inline SvdResult svd(const ComplexMatrix& q, double tol = 1e-9) {
  if (q.rows() == 0 || !q.square())
    throw DimensionMismatch("svd: coupling block must be square and nonempty");
  const std::size_t n = q.rows();

  // Build Q†Q exactly Hermitian: compute the upper triangle once and mirror.
  ComplexMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(q(k, i)) * q(k, j);
      if (i == j) {
        b(i, i) = acc.real();
      } else {
        b(i, j) = acc;
        b(j, i) = std::conj(acc);
      }
    }
  }

  const EigenResult eig = hermitian_eigen(b);
  const double s_max = std::sqrt(std::max(eig.values.back(), 0.0));

  struct Channel {
    double s;
    std::vector<Complex> u, v;
  };
  std::vector<Channel> channels;
  channels.reserve(n);

  for (std::size_t k = n; k-- > 0;) {  // descending eigenvalue order
    std::vector<Complex> v = eig.vectors.col(k);
    std::vector<Complex> w = q.apply(v);
    const double wn = vnorm(w);
    const double s_eig = std::sqrt(std::max(eig.values[k], 0.0));
    // Two zero gates: the eigenvalue route keeps only half the digits (it is
    // the square root of a value known to O(eps)·‖Q‖², so a true zero can
    // surface as ~1e-8·s_max), while ‖Q·v‖ is accurate but only meaningful
    // once v itself is sane. A channel counts as a zero mode if either
    // estimate collapses; otherwise s = ‖Q·v‖ so Q·v = s·u holds to rounding.
    if (s_eig <= tol * s_max || wn <= tol * s_max) {
      channels.push_back({0.0, {}, std::move(v)});
    } else {
      vscale(w, 1.0 / wn);
      channels.push_back({wn, std::move(w), std::move(v)});
    }
  }

  // sqrt(eigenvalue) and ‖Q·v‖ can disagree at rounding level inside a
  // degenerate cluster, so re-impose the descending order exactly.
  std::stable_sort(channels.begin(), channels.end(),
                   [](const Channel& a, const Channel& b) { return a.s > b.s; });

  SvdResult out;
  out.singular_values.resize(n);
  out.left_vectors = ComplexMatrix(n, n);
  out.right_vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.singular_values[k] = channels[k].s;
    out.right_vectors.set_col(k, channels[k].v);
    if (!channels[k].u.empty()) out.left_vectors.set_col(k, channels[k].u);
  }

  // Zero modes sit at the tail. Their s = 0 terms drop out of U·diag(s)·V†,
  // so any orthonormal completion serves; extend deterministically from the
  // best-conditioned standard basis vector.
  for (std::size_t k = 0; k < n; ++k) {
    if (channels[k].s > 0.0) continue;
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<Complex> cand(n, Complex{});
      cand[e] = 1.0;
      for (int round = 0; round < 2; ++round) {
        for (std::size_t j = 0; j < k; ++j) {
          const std::vector<Complex> col = out.left_vectors.col(j);
          vaxpy(cand, -vdot(col, cand), col);
        }
      }
      const double cn = vnorm(cand);
      if (cn > best_norm) {
        best_norm = cn;
        best = std::move(cand);
      }
      if (best_norm > 0.7) break;
    }
    vscale(best, 1.0 / best_norm);
    out.left_vectors.set_col(k, best);
  }
  return out;
}

}  // namespace ctbands
