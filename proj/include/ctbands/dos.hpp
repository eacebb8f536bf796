#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ctbands/errors.hpp"
#include "ctbands/models.hpp"
#include "ctbands/parallel.hpp"

namespace ctbands {

struct DosHistogram {
  std::vector<double> bin_edges;  // bins + 1 edges, exactly antisymmetric
  std::vector<double> density;    // states per unit energy per unit cell
  double j_hop = 0.0, t_hop = 0.0, gamma = 0.0;
  std::size_t grid_m = 0, bins_b = 0;

  double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i)
      s += density[i] * (bin_edges[i + 1] - bin_edges[i]);
    return s;
  }
};

/// Box-counting density of states of the bilayer bands on an M x M momentum
/// grid. Every grid point drops one sample on each of the +-epsilon branches
/// with weight 1/M^2, so the histogram integrates to 2 by construction.
/// Samples are tallied as integer counts, which makes the result independent
/// of how the rows are split across worker threads.
inline DosHistogram dos_histogram(const BilayerSpec& spec, std::size_t grid_m,
                                  std::size_t bins_b) {
  if (grid_m < 64) throw Error("dos: momentum grid must be at least 64 per side");
  if (bins_b < 32) throw Error("dos: need at least 32 bins");
  const double j = spec.j_hop, t = spec.t_hop, gamma = spec.gamma;
  const double gamma_c = t - 4.0 * j;
  if (j <= 0.0 || gamma_c <= 0.0) throw OutsideRegime("dos: requires J > 0 and T > 4J");
  if (std::abs(gamma) > gamma_c)
    throw BrokenPhase("dos: spectrum is complex for |gamma| > T - 4J");

  const double e_max = std::sqrt((t + 4.0 * j) * (t + 4.0 * j) - gamma * gamma);

  DosHistogram hist;
  hist.j_hop = j;
  hist.t_hop = t;
  hist.gamma = gamma;
  hist.grid_m = grid_m;
  hist.bins_b = bins_b;
  hist.bin_edges.resize(bins_b + 1);
  for (std::size_t i = 0; i <= bins_b; ++i) {
    const long m = 2 * static_cast<long>(i) - static_cast<long>(bins_b);
    // m and -m give exact negations, so bin i mirrors bin B-1-i to the bit.
    hist.bin_edges[i] = m == static_cast<long>(bins_b)
                            ? e_max
                            : (m == -static_cast<long>(bins_b)
                                   ? -e_max
                                   : static_cast<double>(m) * e_max / static_cast<double>(bins_b));
  }

  const double width = 2.0 * e_max / static_cast<double>(bins_b);
  std::vector<std::uint64_t> counts(bins_b, 0);
  {
    const std::size_t workers = std::max(1u, worker_count());
    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(bins_b, 0));
    parallel_chunks(grid_m, [&](std::size_t w, std::size_t row_begin, std::size_t row_end) {
      std::vector<std::uint64_t>& mine = partial[w];
      for (std::size_t nx = row_begin + 1; nx <= row_end; ++nx) {
        const double cx = std::cos(detail::grid_momentum(nx, grid_m));
        for (std::size_t ny = 1; ny <= grid_m; ++ny) {
          const double cy = std::cos(detail::grid_momentum(ny, grid_m));
          const double braced = 2.0 * j * (cx + cy) + t;
          const double eps = std::sqrt(braced * braced - gamma * gamma);
          for (const double sample : {eps, -eps}) {
            long idx = static_cast<long>((sample + e_max) / width);
            idx = std::max(0L, std::min(static_cast<long>(bins_b) - 1, idx));
            ++mine[static_cast<std::size_t>(idx)];
          }
        }
      }
    });
    for (const std::vector<std::uint64_t>& p : partial)
      for (std::size_t i = 0; i < bins_b; ++i) counts[i] += p[i];
  }

  const double cell_weight = static_cast<double>(grid_m) * static_cast<double>(grid_m);
  hist.density.resize(bins_b);
  for (std::size_t i = 0; i < bins_b; ++i)
    hist.density[i] = static_cast<double>(counts[i]) /
                      (cell_weight * (hist.bin_edges[i + 1] - hist.bin_edges[i]));
  return hist;
}

/// Closed-form near-gap density of states: |eps| / (4 pi J gamma_c) outside
/// the residual gap sqrt(gamma_c^2 - gamma^2), zero inside it.
inline double dos_approx(double epsilon, double j_hop, double gamma, double gamma_c) {
  if (j_hop <= 0.0 || gamma_c <= 0.0)
    throw Error("dos approx: needs J > 0 and gamma_c > 0");
  const double gap2 = gamma_c * gamma_c - gamma * gamma;
  const double threshold = gap2 > 0.0 ? std::sqrt(gap2) : 0.0;
  if (std::abs(epsilon) < threshold) return 0.0;
  return std::abs(epsilon) / (4.0 * std::numbers::pi * j_hop * gamma_c);
}

struct DosFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares proportionality density = slope * |bin center| over the bins
/// whose positive center falls inside [lo, hi], with each bin folded onto its
/// mirror first. The fit is through the origin because the low-energy law is
/// exactly proportional; r_squared uses the zero baseline as is conventional
/// for such fits.
inline DosFit dos_linear_fit(const DosHistogram& hist, double lo, double hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < hist.bins_b; ++i) {
    const double center = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    if (center <= 0.0 || center < lo || center > hi) continue;
    const std::size_t mirror = hist.bins_b - 1 - i;
    xs.push_back(center);
    ys.push_back(0.5 * (hist.density[i] + hist.density[mirror]));
  }
  if (xs.size() < 5)
    throw InsufficientBins("dos fit: window covers fewer than 5 bins");

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  DosFit fit;
  fit.slope = sxy / sxx;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.slope * xs[i];
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace ctbands
