#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ctbands/dos.hpp"
#include "ctbands/errors.hpp"
#include "ctbands/lattice.hpp"
#include "ctbands/models.hpp"
#include "ctbands/spectra.hpp"

namespace ctbands {

/// Fixed 12-significant-digit formatting for CSV cells, independent of locale
/// and stream state, so identical runs produce identical bytes.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// -- lattice JSON schema: {"n": int, "couplings": [[i, j, re, im], ...],
//    "labels": optional [string x 2n]}; couplings not listed are zero. ------

inline nlohmann::json lattice_to_json(const BipartiteLattice& lattice) {
  lattice.validate();
  nlohmann::json couplings = nlohmann::json::array();
  for (std::size_t i = 0; i < lattice.n; ++i) {
    for (std::size_t j = 0; j < lattice.n; ++j) {
      const Complex q = lattice.coupling(i, j);
      if (q == Complex{}) continue;
      couplings.push_back({i, j, q.real(), q.imag()});
    }
  }
  nlohmann::json doc{{"n", lattice.n}, {"couplings", std::move(couplings)}};
  if (!lattice.site_labels.empty()) doc["labels"] = lattice.site_labels;
  return doc;
}

inline BipartiteLattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_unsigned())
    throw Error("lattice json: expected an object with an unsigned \"n\"");
  const std::size_t n = doc["n"].get<std::size_t>();
  if (n == 0) throw Error("lattice json: n must be at least 1");

  BipartiteLattice lattice{n, ComplexMatrix(n, n), {}};
  if (doc.contains("couplings")) {
    if (!doc["couplings"].is_array())
      throw Error("lattice json: \"couplings\" must be an array");
    for (const nlohmann::json& entry : doc["couplings"]) {
      if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_unsigned() ||
          !entry[1].is_number_unsigned() || !entry[2].is_number() || !entry[3].is_number())
        throw Error("lattice json: coupling entries must be [i, j, re, im]");
      const std::size_t i = entry[0].get<std::size_t>();
      const std::size_t j = entry[1].get<std::size_t>();
      if (i >= n || j >= n) throw Error("lattice json: coupling index out of range");
      lattice.coupling(i, j) = Complex{entry[2].get<double>(), entry[3].get<double>()};
    }
  }
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != 2 * n)
      throw Error("lattice json: \"labels\" must list one string per site");
    for (const nlohmann::json& label : doc["labels"])
      lattice.site_labels.push_back(label.get<std::string>());
  }
  lattice.validate();
  return lattice;
}

inline void save_lattice(const BipartiteLattice& lattice, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << lattice_to_json(lattice).dump(2) << '\n';
}

inline BipartiteLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lattice file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("lattice json: " + std::string(e.what()));
  }
  return lattice_from_json(doc);
}

// -- spectrum report JSON -----------------------------------------------------

inline nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json{z.real(), z.imag()};
}

inline nlohmann::json report_to_json(const SpectrumReport& report, bool with_vectors = false) {
  nlohmann::json channels = nlohmann::json::array();
  for (const SpectralPair& pair : report.pairs) {
    nlohmann::json channel{
        {"epsilon0", pair.epsilon0},
        {"eigenvalues",
         nlohmann::json{complex_to_json(pair.eps_plus), complex_to_json(pair.eps_minus)}},
        {"broken", pair.broken}};
    if (with_vectors) {
      nlohmann::json plus = nlohmann::json::array(), minus = nlohmann::json::array();
      for (const Complex z : pair.psi_plus) plus.push_back(complex_to_json(z));
      for (const Complex z : pair.psi_minus) minus.push_back(complex_to_json(z));
      channel["psi_plus"] = std::move(plus);
      channel["psi_minus"] = std::move(minus);
    }
    channels.push_back(std::move(channel));
  }
  return nlohmann::json{{"gamma", report.gamma},
                        {"gamma_c", report.gamma_c},
                        {"fully_real", report.fully_real},
                        {"zero_modes", report.zero_modes},
                        {"channels", std::move(channels)}};
}

// -- CSV writers ---------------------------------------------------------------

inline void write_band_csv(std::ostream& os, const BandGrid& grid, bool full = false) {
  os << "k_x,k_y,sector,eps0,eps_re,eps_im\n";
  for (const BandPoint& p : grid.points) {
    const std::string prefix = format_double(p.kx) + "," + format_double(p.ky) + "," +
                               std::to_string(p.sector) + "," + format_double(p.epsilon0);
    os << prefix << ',' << format_double(p.eps_plus.real()) << ','
       << format_double(p.eps_plus.imag()) << '\n';
    if (full)
      os << prefix << ',' << format_double(-p.eps_plus.real()) << ','
         << format_double(-p.eps_plus.imag()) << '\n';
  }
}

inline void write_dos_csv(std::ostream& os, const DosHistogram& hist) {
  os << "eps_center,density\n";
  for (std::size_t i = 0; i < hist.density.size(); ++i) {
    const double center = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    os << format_double(center) << ',' << format_double(hist.density[i]) << '\n';
  }
}

inline nlohmann::json dos_meta_json(const DosHistogram& hist) {
  return nlohmann::json{{"J", hist.j_hop},     {"T", hist.t_hop}, {"gamma", hist.gamma},
                        {"M", hist.grid_m},    {"B", hist.bins_b},
                        {"integral", hist.integral()}};
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points) {
  os << "gamma,fully_real,n_broken\n";
  for (const ScanPoint& p : points)
    os << format_double(p.gamma) << ',' << (p.fully_real ? 1 : 0) << ',' << p.n_broken
       << '\n';
}

}  // namespace ctbands
