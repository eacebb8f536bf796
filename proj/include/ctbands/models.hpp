#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctbands/errors.hpp"
#include "ctbands/lattice.hpp"
#include "ctbands/matrix.hpp"
#include "ctbands/spectra.hpp"

namespace ctbands {

/// Dimerized ring: alternating hoppings 1 - delta (intra-cell) and 1 + delta
/// (inter-cell) in units of the mean hopping, periodic boundary.
struct RiceMeleSpec {
  std::size_t n_cells = 0;
  double delta = 0.0;
};

/// Two stacked N x N square lattices: intra-layer hopping J, inter-layer
/// rungs T, staggered imaginary potential of strength gamma whose sign
/// alternates with the site parity (-1)^(layer + j + l).
struct BilayerSpec {
  std::size_t n = 0;  // linear size, must be even so (pi, pi) sits on the grid
  double j_hop = 1.0;
  double t_hop = 5.0;
  double gamma = 0.0;
};

inline BipartiteLattice rice_mele_lattice(const RiceMeleSpec& spec) {
  const std::size_t n = spec.n_cells;
  if (n < 2) throw Error("rice-mele: need at least 2 cells");
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    q(j, j) = 1.0 - spec.delta;            // A_j to B_j inside the cell
    q((j + 1) % n, j) = 1.0 + spec.delta;  // B_j to A_{j+1} across cells
  }
  return {n, std::move(q), {}};
}

namespace detail {

/// k = 2*pi*m/n, m in [1, n]. Written so the half-grid point lands on pi to
/// the last bit when n/2 is a power of two, and within an ulp otherwise;
/// either way cos(k) evaluates to an exact -1 there.
inline double grid_momentum(std::size_t m, std::size_t n) {
  return (2.0 * std::numbers::pi * static_cast<double>(m)) / static_cast<double>(n);
}

}  // namespace detail

/// Analytic Rice-Mele channel energy and the resulting complex band energy
/// (positive branch) at momentum k.
inline std::pair<double, Complex> rice_mele_dispersion(double delta, double k, double gamma) {
  const double c = std::cos(0.5 * k);
  const double epsilon0 =
      2.0 * std::sqrt(delta * delta + (1.0 - delta * delta) * c * c);
  return {epsilon0, detail::principal_eps(epsilon0, gamma)};
}

/// Bilayer builder. Sites are (layer, j, l) with layer in {1, 2}; the
/// A-sublattice collects the sites with even layer + j + l, which is exactly
/// the set picked out by the staggered potential sign. Every J bond flips
/// j + l parity and every T rung flips the layer, so bipartiteness holds bond
/// by bond and is asserted while building. Both sublattices are indexed by
/// the plane coordinate j*N + l (each plane cell owns one A and one B site).
inline BipartiteLattice bilayer_lattice(const BilayerSpec& spec) {
  const std::size_t nside = spec.n;
  if (nside < 2 || nside % 2 != 0)
    throw OddSize("bilayer: linear size must be even and at least 2");
  const std::size_t n = nside * nside;

  const auto on_a = [](int layer, std::size_t j, std::size_t l) {
    return (static_cast<std::size_t>(layer) + j + l) % 2 == 0;
  };
  const auto plane = [nside](std::size_t j, std::size_t l) { return j * nside + l; };

  ComplexMatrix q(n, n);
  const auto add_bond = [&](int layer1, std::size_t j1, std::size_t l1, int layer2,
                            std::size_t j2, std::size_t l2, double w) {
    const bool a1 = on_a(layer1, j1, l1);
    if (a1 == on_a(layer2, j2, l2))
      throw BrokenBipartiteness("bilayer: bond joins two sites of one sublattice");
    if (a1)
      q(plane(j1, l1), plane(j2, l2)) += w;
    else
      q(plane(j2, l2), plane(j1, l1)) += w;
  };

  for (const int layer : {1, 2}) {
    for (std::size_t j = 0; j < nside; ++j) {
      for (std::size_t l = 0; l < nside; ++l) {
        add_bond(layer, j, l, layer, (j + 1) % nside, l, spec.j_hop);
        add_bond(layer, j, l, layer, j, (l + 1) % nside, spec.j_hop);
      }
    }
  }
  for (std::size_t j = 0; j < nside; ++j)
    for (std::size_t l = 0; l < nside; ++l) add_bond(1, j, l, 2, j, l, spec.t_hop);

  // Record which layer each sublattice slot lives in; useful when eyeballing
  // exported lattices.
  std::vector<std::string> labels(2 * n);
  for (std::size_t j = 0; j < nside; ++j) {
    for (std::size_t l = 0; l < nside; ++l) {
      const int layer_a = on_a(1, j, l) ? 1 : 2;
      const std::string coords = std::to_string(j) + "," + std::to_string(l);
      labels[plane(j, l)] = "layer" + std::to_string(layer_a) + ":" + coords;
      labels[n + plane(j, l)] = "layer" + std::to_string(3 - layer_a) + ":" + coords;
    }
  }
  return {n, std::move(q), std::move(labels)};
}

/// Bond (+1) / antibond (-1) sector energy at one momentum, plus the positive
/// branch of the complex band energy. The channel energy is the sector sign
/// times 2J(cos kx + cos ky) + T.
inline std::pair<double, Complex> bilayer_dispersion(const BilayerSpec& spec, double kx,
                                                     double ky, int sector) {
  const double braced = 2.0 * spec.j_hop * (std::cos(kx) + std::cos(ky)) + spec.t_hop;
  const double epsilon0 = sector >= 0 ? braced : -braced;
  return {epsilon0, detail::principal_eps(epsilon0, spec.gamma)};
}

struct BandPoint {
  double kx = 0.0, ky = 0.0;
  int sector = 1;          // +1 bond, -1 antibond
  double epsilon0 = 0.0;   // signed sector energy
  Complex eps_plus;        // positive branch; the negative branch is -eps_plus
};

struct BandGrid {
  std::size_t n = 0;  // n x n momenta, k = 2*pi*m/n with m in [1, n]
  double j_hop = 0.0, t_hop = 0.0, gamma = 0.0;
  std::vector<BandPoint> points;  // row-major in (n_x, n_y), sector +1 then -1
};

inline BandGrid band_grid(const BilayerSpec& spec) {
  const std::size_t nside = spec.n;
  if (nside < 2 || nside % 2 != 0)
    throw OddSize("band grid: linear size must be even and at least 2");

  BandGrid grid{nside, spec.j_hop, spec.t_hop, spec.gamma, {}};
  grid.points.reserve(2 * nside * nside);
  for (std::size_t nx = 1; nx <= nside; ++nx) {
    const double kx = detail::grid_momentum(nx, nside);
    for (std::size_t ny = 1; ny <= nside; ++ny) {
      const double ky = detail::grid_momentum(ny, nside);
      for (const int sector : {1, -1}) {
        const auto [eps0, eps] = bilayer_dispersion(spec, kx, ky, sector);
        grid.points.push_back({kx, ky, sector, eps0, eps});
      }
    }
  }
  return grid;
}

/// Smallest strictly positive real band energy on the grid; 0 if every point
/// is gapless or broken.
inline double min_positive_energy(const BandGrid& grid) {
  double best = std::numeric_limits<double>::infinity();
  for (const BandPoint& p : grid.points)
    if (p.eps_plus.imag() == 0.0 && p.eps_plus.real() > 0.0)
      best = std::min(best, p.eps_plus.real());
  return std::isinf(best) ? 0.0 : best;
}

struct ValleyAnalysis {
  double gap = 0.0;      // 0 once the spectrum turns complex at the valley
  double gamma_c = 0.0;  // T - 4J
  std::vector<std::pair<double, double>> valley_points;
  // Near-valley quadric semi-axes (a, b, c): present only while |gamma| <= gamma_c.
  std::optional<std::array<double, 3>> hyperboloid;
  std::optional<double> v_g;  // Dirac-cone slope at gamma = gamma_c
};

/// Valley quantities of the bilayer band structure. The braced sector energy
/// must stay positive over the whole zone (T > 4J), otherwise the valley
/// picture does not apply and the call refuses.
inline ValleyAnalysis valley_analysis(const BilayerSpec& spec) {
  const double j = spec.j_hop;
  const double gamma_c = spec.t_hop - 4.0 * j;
  if (j <= 0.0 || gamma_c <= 0.0)
    throw OutsideRegime("valley analysis: requires J > 0 and T > 4J");
  if (spec.n < 2 || spec.n % 2 != 0)
    throw OddSize("valley analysis: linear size must be even and at least 2");

  ValleyAnalysis out;
  out.gamma_c = gamma_c;
  out.gap = 2.0 * detail::principal_eps(gamma_c, spec.gamma).real();
  out.valley_points = {{std::numbers::pi, std::numbers::pi}};
  if (std::abs(spec.gamma) <= gamma_c) {
    const double c = std::sqrt(gamma_c * gamma_c - spec.gamma * spec.gamma);
    const double a = c / std::sqrt(2.0 * j * gamma_c);
    out.hyperboloid = {{a, a, c}};
    out.v_g = std::sqrt(2.0 * j * gamma_c);
  }
  return out;
}

}  // namespace ctbands
