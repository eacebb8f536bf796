#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctbands/errors.hpp"
#include "ctbands/matrix.hpp"

namespace ctbands {

/// Bipartite lattice with equal sublattice counts. coupling(i, j) is the
/// hopping amplitude between A-site i and B-site j; there are no A-A or B-B
/// bonds by construction.
struct BipartiteLattice {
  std::size_t n = 0;                      // sites per sublattice
  ComplexMatrix coupling;                 // n x n block Q
  std::vector<std::string> site_labels;   // optional, A block then B block

  void validate() const {
    if (coupling.rows() != n || coupling.cols() != n || n == 0)
      throw DimensionMismatch("lattice: coupling block must be n x n with n >= 1");
    if (!coupling.all_finite())
      throw Error("lattice: coupling entries must be finite");
    if (!site_labels.empty() && site_labels.size() != 2 * n)
      throw DimensionMismatch("lattice: expected one label per site");
  }
};

/// Assembled 2N x 2N Hamiltonian: A sites first, then B sites, so the matrix
/// is literally [[i*gamma*I, Q], [Q^dagger, -i*gamma*I]].
struct NhHamiltonian {
  BipartiteLattice lattice;
  double gamma = 0.0;
  ComplexMatrix matrix;

  std::size_t dim() const { return matrix.rows(); }
};

inline NhHamiltonian assemble(const BipartiteLattice& lattice, double gamma) {
  lattice.validate();
  if (!std::isfinite(gamma)) throw Error("assemble: gamma must be finite");

  const std::size_t n = lattice.n;
  ComplexMatrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = Complex{0.0, gamma};
    h(n + i, n + i) = Complex{0.0, -gamma};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex q = lattice.coupling(i, j);
      h(i, n + j) = q;
      h(n + j, i) = std::conj(q);
    }
  }
  return {lattice, gamma, std::move(h)};
}

/// Chiral operation C: A components kept, B components negated. Involutive.
inline std::vector<Complex> apply_chiral(std::span<const Complex> state) {
  if (state.size() % 2 != 0)
    throw DimensionMismatch("apply_chiral: state length must be 2N");
  std::vector<Complex> out(state.begin(), state.end());
  for (std::size_t i = out.size() / 2; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

/// Max-norm of C.conj(H).C + H. Entrywise conjugation realizes the antiunitary
/// part, so the residual is computed without forming any matrix product:
/// (C.conj(H).C)[i][j] = c_i c_j conj(H[i][j]) with c = +1 on A, -1 on B.
/// For real couplings the cancellation is exact and the residual is 0.0.
inline double check_ct_anticommutation(const NhHamiltonian& h) {
  const std::size_t n2 = h.dim();
  const std::size_t n = n2 / 2;
  double residual = 0.0;
  for (std::size_t i = 0; i < n2; ++i) {
    const double ci = i < n ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n2; ++j) {
      const double cj = j < n ? 1.0 : -1.0;
      const Complex z = h.matrix(i, j);
      residual = std::max(residual, std::abs(ci * cj * std::conj(z) + z));
    }
  }
  return residual;
}

/// True iff the eigenvalue multiset maps to itself under complex conjugation,
/// pairing greedily within tol. A value close to the real axis may pair with
/// itself.
inline bool check_conjugate_pair_spectrum(const std::vector<Complex>& values, double tol) {
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    const Complex target = std::conj(values[i]);
    std::size_t best = values.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(target - values[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == values.size() || best_d > tol) return false;
    used[i] = true;
    used[best] = true;
  }
  return true;
}

}  // namespace ctbands
