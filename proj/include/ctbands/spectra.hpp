#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ctbands/eigen.hpp"
#include "ctbands/errors.hpp"
#include "ctbands/lattice.hpp"
#include "ctbands/matrix.hpp"

namespace ctbands {

/// One pseudo-spin channel: a singular pair (phi_a, phi_b) of the coupling
/// block with singular value epsilon0, carrying both closed-form eigenpairs
/// of the full Hamiltonian.
struct SpectralPair {
  double epsilon0 = 0.0;
  std::vector<Complex> phi_a, phi_b;  // unit singular vectors, length N
  Complex eps_plus, eps_minus;        // eps_minus = -eps_plus
  std::vector<Complex> psi_plus, psi_minus;  // unit eigenvectors, length 2N
  Complex theta;                      // mixing angle; meaningless on zero modes
  bool broken = false;                // eigenvalues off the real axis
  bool zero_mode = false;             // epsilon0 collapsed to zero
};

struct SpectrumReport {
  std::vector<SpectralPair> pairs;  // descending epsilon0, zero modes last
  double gamma = 0.0;
  double gamma_c = 0.0;  // min epsilon0 over nonzero channels, 0 if none
  bool fully_real = false;
  std::size_t zero_modes = 0;
};

/// Mixing angle of a channel, defined through exp(-i*theta) = (eps_plus - i*gamma)/epsilon0.
/// Real arcsin(gamma/epsilon0) while the channel is unbroken; once |gamma|
/// exceeds epsilon0 the angle walks off the real axis with
/// Im theta = -sign(gamma)*arccosh(|gamma|/epsilon0).
inline Complex theta_of(double epsilon0, double gamma) {
  if (epsilon0 <= 0.0) throw ZeroEpsilon("theta_of: channel energy must be positive");
  const double g = gamma / epsilon0;
  if (std::abs(g) <= 1.0) return Complex{std::asin(g), 0.0};
  const double sgn = g > 0.0 ? 1.0 : -1.0;
  return Complex{sgn * std::numbers::pi / 2.0, -sgn * std::acosh(std::abs(g))};
}

/// Dirac normalization coefficients (Omega_plus, Omega_minus) = 1 + exp(+-2 Im theta).
/// Both equal 2 for real theta.
inline std::pair<double, double> omega_norms(Complex theta) {
  const double im = theta.imag();
  return {1.0 + std::exp(2.0 * im), 1.0 + std::exp(-2.0 * im)};
}

namespace detail {

/// Principal branch of sqrt(epsilon0^2 - gamma^2): nonnegative real when the
/// channel is unbroken, positive imaginary when broken. Built from real
/// square roots so the sign of an inexact zero cannot flip the branch.
inline Complex principal_eps(double epsilon0, double gamma) {
  const double disc = epsilon0 * epsilon0 - gamma * gamma;
  return disc >= 0.0 ? Complex{std::sqrt(disc), 0.0} : Complex{0.0, std::sqrt(-disc)};
}

}  // namespace detail

/// Full closed-form spectrum of an assembled Hamiltonian via the singular
/// value decomposition of its coupling block. Each channel contributes the
/// eigenvalue pair +-sqrt(epsilon0^2 - gamma^2) with eigenvectors mixing the
/// singular pair through the amplitude ratio r = (eps - i*gamma)/epsilon0;
/// the ratio form survives the broken phase and the exceptional point, where
/// the textbook exp(-i*theta) expression needs branch care.
inline SpectrumReport solve(const NhHamiltonian& h) {
  const double gamma = h.gamma;
  const std::size_t n = h.lattice.n;
  const SvdResult dec = svd(h.lattice.coupling);

  SpectrumReport report;
  report.gamma = gamma;
  double gamma_c = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    SpectralPair pair;
    pair.epsilon0 = dec.singular_values[k];
    pair.phi_a = dec.left_vectors.col(k);
    pair.phi_b = dec.right_vectors.col(k);
    pair.broken = pair.epsilon0 * pair.epsilon0 < gamma * gamma;

    if (pair.epsilon0 == 0.0) {
      // Zero mode: Q*phi_b = 0 and Q^dagger*phi_a = 0, so the pure-sublattice
      // states are exact eigenvectors with eigenvalues +-i*gamma. Assign the
      // labels so eps_plus stays on the principal branch.
      pair.zero_mode = true;
      ++report.zero_modes;
      pair.eps_plus = Complex{0.0, std::abs(gamma)};
      pair.eps_minus = -pair.eps_plus;
      std::vector<Complex> pure_a(2 * n), pure_b(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        pure_a[i] = pair.phi_a[i];
        pure_b[n + i] = pair.phi_b[i];
      }
      pair.psi_plus = gamma >= 0.0 ? pure_a : pure_b;
      pair.psi_minus = gamma >= 0.0 ? std::move(pure_b) : std::move(pure_a);
    } else {
      gamma_c = std::min(gamma_c, pair.epsilon0);
      pair.eps_plus = detail::principal_eps(pair.epsilon0, gamma);
      pair.eps_minus = -pair.eps_plus;
      pair.theta = theta_of(pair.epsilon0, gamma);

      const Complex igamma{0.0, gamma};
      for (const int branch : {0, 1}) {
        const Complex eps = branch == 0 ? pair.eps_plus : pair.eps_minus;
        const Complex ratio = (eps - igamma) / pair.epsilon0;
        std::vector<Complex> psi(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
          psi[i] = pair.phi_a[i];
          psi[n + i] = ratio * pair.phi_b[i];
        }
        vscale(psi, 1.0 / vnorm(psi));
        (branch == 0 ? pair.psi_plus : pair.psi_minus) = std::move(psi);
      }
    }
    report.pairs.push_back(std::move(pair));
  }

  report.gamma_c = std::isinf(gamma_c) ? 0.0 : gamma_c;
  report.fully_real = std::abs(gamma) < report.gamma_c && report.zero_modes == 0;
  return report;
}

/// All 2N eigenvalues of a report, channel by channel (plus before minus).
inline std::vector<Complex> all_eigenvalues(const SpectrumReport& report) {
  std::vector<Complex> out;
  out.reserve(2 * report.pairs.size());
  for (const SpectralPair& p : report.pairs) {
    out.push_back(p.eps_plus);
    out.push_back(p.eps_minus);
  }
  return out;
}

struct ScanPoint {
  double gamma = 0.0;
  bool fully_real = false;
  std::size_t n_broken = 0;
};

/// Count broken channels at each gamma from a single decomposition of the
/// coupling block. A channel breaks strictly when epsilon0 < |gamma|, so the
/// exceptional point itself still reads as real.
inline std::vector<ScanPoint> exceptional_scan(const BipartiteLattice& lattice,
                                               const std::vector<double>& gamma_values) {
  if (gamma_values.empty()) throw Error("exceptional_scan: need at least one gamma");
  lattice.validate();
  const SvdResult dec = svd(lattice.coupling);

  std::vector<ScanPoint> out;
  out.reserve(gamma_values.size());
  for (const double g : gamma_values) {
    std::size_t broken = 0;
    for (const double s : dec.singular_values)
      if (s < std::abs(g)) ++broken;
    out.push_back({g, broken == 0, broken});
  }
  return out;
}

/// First adjacent scan pair straddling the real-to-complex transition.
inline std::optional<std::pair<double, double>> transition_bracket(
    const std::vector<ScanPoint>& points) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i].n_broken == 0 && points[i + 1].n_broken > 0)
      return std::make_pair(points[i].gamma, points[i + 1].gamma);
  return std::nullopt;
}

}  // namespace ctbands
