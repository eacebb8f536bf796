// Command-line front end: builds the bundled models (or a custom lattice from
// JSON), runs band-structure, DOS, transition-scan, spectrum and self-check
// computations, and writes plot-ready CSV or structured JSON.
//
// Exit codes: 0 success, 2 configuration or input error, 3 compute refusal
// (for example a DOS request inside the broken phase).

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctbands/ctbands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

struct Options {
  std::string model;
  std::size_t n = 0;
  double delta = 0.0;
  double j_hop = 1.0;
  double t_hop = 5.0;
  double gamma = 0.0;
  std::size_t bins = 200;
  double gamma_from = 0.0;
  double gamma_to = 1.0;
  std::size_t steps = 2;
  std::string lattice_path;
  std::string output;
  std::string format = "csv";
  bool full = false;
  bool vectors = false;
};

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "ctbands: " << message << '\n';
  std::exit(code);
}

/// Compute refusals keep their own exit code; everything else thrown by the
/// library stems from unusable input here.
[[noreturn]] void fail(const ctbands::Error& e) {
  const bool compute = dynamic_cast<const ctbands::BrokenPhase*>(&e) ||
                       dynamic_cast<const ctbands::OutsideRegime*>(&e) ||
                       dynamic_cast<const ctbands::NoConvergence*>(&e) ||
                       dynamic_cast<const ctbands::NotHermitian*>(&e) ||
                       dynamic_cast<const ctbands::ZeroEpsilon*>(&e);
  fail(compute ? kExitCompute : kExitConfig, e.what());
}

void require_finite(double v, const std::string& name) {
  if (!std::isfinite(v)) fail(kExitConfig, name + " must be finite");
}

void warn_model(const Options& opt) {
  if (opt.model == "rice-mele" && std::abs(opt.delta) >= 1.0)
    std::cerr << "ctbands: warning: |delta| >= 1 leaves the dimerized chain "
                 "without a positive hopping pattern\n";
  if (opt.model == "bilayer" && opt.t_hop <= 4.0 * opt.j_hop)
    std::cerr << "ctbands: warning: T <= 4J closes the sector gap; valley "
                 "quantities are not meaningful\n";
}

ctbands::BipartiteLattice build_lattice(const Options& opt) {
  if (opt.model == "rice-mele")
    return ctbands::rice_mele_lattice({opt.n, opt.delta});
  if (opt.model == "bilayer")
    return ctbands::bilayer_lattice({opt.n, opt.j_hop, opt.t_hop, opt.gamma});
  return ctbands::load_lattice(opt.lattice_path);
}

/// Stream sink: the named file, or stdout when no path was given.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) fail(kExitConfig, "cannot open for writing: " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

// -- bands ---------------------------------------------------------------------

nlohmann::json grid_to_json(const ctbands::BandGrid& grid, bool full) {
  nlohmann::json points = nlohmann::json::array();
  for (const ctbands::BandPoint& p : grid.points) {
    points.push_back({{"k_x", p.kx},
                      {"k_y", p.ky},
                      {"sector", p.sector},
                      {"eps0", p.epsilon0},
                      {"eps", ctbands::complex_to_json(p.eps_plus)}});
    if (full)
      points.back()["eps_minus"] = ctbands::complex_to_json(-p.eps_plus);
  }
  return nlohmann::json{{"n", grid.n},     {"J", grid.j_hop},
                        {"T", grid.t_hop}, {"gamma", grid.gamma},
                        {"points", std::move(points)}};
}

int run_bands(const Options& opt) {
  warn_model(opt);
  const ctbands::BandGrid grid =
      ctbands::band_grid({opt.n, opt.j_hop, opt.t_hop, opt.gamma});
  OutputSink sink(opt.output);
  if (opt.format == "json")
    sink.stream() << grid_to_json(grid, opt.full).dump(2) << '\n';
  else
    ctbands::write_band_csv(sink.stream(), grid, opt.full);
  return 0;
}

// -- dos -------------------------------------------------------------------------

int run_dos(const Options& opt) {
  const ctbands::DosHistogram hist = ctbands::dos_histogram(
      {64, opt.j_hop, opt.t_hop, opt.gamma}, opt.n, opt.bins);
  OutputSink sink(opt.output);
  if (opt.format == "json") {
    nlohmann::json bins = nlohmann::json::array();
    for (std::size_t i = 0; i < hist.density.size(); ++i)
      bins.push_back({{"eps_center", 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1])},
                      {"density", hist.density[i]}});
    nlohmann::json doc = ctbands::dos_meta_json(hist);
    doc["bins"] = std::move(bins);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    ctbands::write_dos_csv(sink.stream(), hist);
    if (sink.is_file()) {
      std::ofstream meta(opt.output + ".meta.json");
      if (!meta) fail(kExitConfig, "cannot open for writing: " + opt.output + ".meta.json");
      meta << ctbands::dos_meta_json(hist).dump(2) << '\n';
    }
  }
  return 0;
}

// -- scan ------------------------------------------------------------------------

int run_scan(const Options& opt) {
  warn_model(opt);
  std::vector<double> gammas;
  for (std::size_t i = 0; i < opt.steps; ++i)
    gammas.push_back(opt.steps == 1
                         ? opt.gamma_from
                         : opt.gamma_from + static_cast<double>(i) *
                                                (opt.gamma_to - opt.gamma_from) /
                                                static_cast<double>(opt.steps - 1));

  const ctbands::BipartiteLattice lattice = build_lattice(opt);
  const std::vector<ctbands::ScanPoint> points = ctbands::exceptional_scan(lattice, gammas);
  const auto bracket = ctbands::transition_bracket(points);

  OutputSink sink(opt.output);
  if (opt.format == "json") {
    nlohmann::json doc{{"points", nlohmann::json::array()}};
    for (const ctbands::ScanPoint& p : points)
      doc["points"].push_back(
          {{"gamma", p.gamma}, {"fully_real", p.fully_real}, {"n_broken", p.n_broken}});
    doc["bracket"] = bracket ? nlohmann::json{bracket->first, bracket->second}
                             : nlohmann::json(nullptr);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    ctbands::write_scan_csv(sink.stream(), points);
  }

  // keep the summary off the data stream
  std::ostream& note = sink.is_file() ? std::cout : std::cerr;
  if (bracket)
    note << "transition between gamma = " << ctbands::format_double(bracket->first)
         << " and " << ctbands::format_double(bracket->second) << '\n';
  else
    note << "no real-to-complex transition in the scanned range\n";
  return 0;
}

// -- spectrum --------------------------------------------------------------------

int run_spectrum(const Options& opt) {
  warn_model(opt);
  const ctbands::BipartiteLattice lattice = build_lattice(opt);
  const ctbands::SpectrumReport report =
      ctbands::solve(ctbands::assemble(lattice, opt.gamma));

  OutputSink sink(opt.output);
  if (opt.format == "csv") {
    sink.stream() << "epsilon0,eps_plus_re,eps_plus_im,eps_minus_re,eps_minus_im,broken\n";
    for (const ctbands::SpectralPair& pair : report.pairs)
      sink.stream() << ctbands::format_double(pair.epsilon0) << ','
                    << ctbands::format_double(pair.eps_plus.real()) << ','
                    << ctbands::format_double(pair.eps_plus.imag()) << ','
                    << ctbands::format_double(pair.eps_minus.real()) << ','
                    << ctbands::format_double(pair.eps_minus.imag()) << ','
                    << (pair.broken ? 1 : 0) << '\n';
  } else {
    sink.stream() << ctbands::report_to_json(report, opt.vectors).dump(2) << '\n';
  }
  return 0;
}

// -- verify ----------------------------------------------------------------------

double pairing_defect(const std::vector<ctbands::Complex>& values) {
  std::vector<bool> used(values.size(), false);
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    const ctbands::Complex target = std::conj(values[i]);
    std::size_t best = i;
    double best_gap = std::abs(target - values[i]);
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (used[j]) continue;
      const double gap = std::abs(target - values[j]);
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_gap);
  }
  return worst;
}

int run_verify(const Options& opt) {
  warn_model(opt);
  const ctbands::BipartiteLattice lattice = build_lattice(opt);
  const ctbands::NhHamiltonian h = ctbands::assemble(lattice, opt.gamma);
  const ctbands::SpectrumReport report = ctbands::solve(h);
  const ctbands::SpectrumReport hermitian = ctbands::solve(ctbands::assemble(lattice, 0.0));
  const double scale = h.matrix.fro_norm();

  nlohmann::json checks;
  bool all_pass = true;
  const auto record = [&](const std::string& name, bool pass, double value) {
    checks[name] = {{"pass", pass}, {"value", value}};
    all_pass = all_pass && pass;
  };

  const double ct = ctbands::check_ct_anticommutation(h);
  record("ct_anticommutation", ct <= 1e-12 * std::max(1.0, h.matrix.max_abs()), ct);

  {
    const double defect = pairing_defect(ctbands::all_eigenvalues(report));
    record("conjugate_pairs", defect <= 1e-9, defect);
  }

  double residual = 0.0;
  for (const ctbands::SpectralPair& pair : report.pairs) {
    for (const int branch : {0, 1}) {
      const ctbands::Complex eps = branch == 0 ? pair.eps_plus : pair.eps_minus;
      const std::vector<ctbands::Complex>& psi =
          branch == 0 ? pair.psi_plus : pair.psi_minus;
      std::vector<ctbands::Complex> hv = h.matrix.apply(psi);
      ctbands::vaxpy(hv, -eps, psi);
      residual = std::max(residual, ctbands::vnorm(hv));
    }
  }
  record("eigen_residual_max", residual <= 1e-9 * scale, residual / scale);

  {
    double deviation = 0.0;
    bool any_unbroken = false;
    for (std::size_t c = 0; c < report.pairs.size(); ++c) {
      const ctbands::SpectralPair& pair = report.pairs[c];
      if (pair.broken || pair.zero_mode) continue;
      any_unbroken = true;
      for (std::size_t s = 0; s < pair.psi_plus.size(); ++s) {
        deviation = std::max(deviation, std::abs(std::norm(pair.psi_plus[s]) -
                                                 std::norm(hermitian.pairs[c].psi_plus[s])));
        deviation = std::max(deviation, std::abs(std::norm(pair.psi_minus[s]) -
                                                 std::norm(hermitian.pairs[c].psi_minus[s])));
      }
    }
    if (any_unbroken)
      record("dirac_probability", deviation <= 1e-10, deviation);
    else
      checks["dirac_probability"] = {{"pass", true}, {"skipped", true}};
  }

  if (opt.model == "bilayer" && opt.t_hop > 4.0 * opt.j_hop &&
      std::abs(opt.gamma) <= opt.t_hop - 4.0 * opt.j_hop) {
    const ctbands::DosHistogram hist =
        ctbands::dos_histogram({64, opt.j_hop, opt.t_hop, opt.gamma}, 128, 64);
    record("dos_normalization", std::abs(hist.integral() - 2.0) <= 1e-6, hist.integral());
  } else {
    checks["dos_normalization"] = {{"pass", true}, {"skipped", true}};
  }

  const nlohmann::json doc{{"model", opt.model},
                           {"gamma", opt.gamma},
                           {"checks", std::move(checks)},
                           {"all_pass", all_pass}};
  OutputSink sink(opt.output);
  sink.stream() << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band structure toolkit for bipartite lattices with balanced "
               "gain and loss"};
  app.require_subcommand(1);
  Options opt;

  const auto add_model = [&](CLI::App* sub, const std::vector<std::string>& models,
                             bool with_gamma) {
    sub->add_option("--model", opt.model, "model family")
        ->required()
        ->check(CLI::IsMember(models));
    sub->add_option("-N,--size", opt.n,
                    "cells (rice-mele) or linear lattice size (bilayer)");
    sub->add_option("--delta", opt.delta, "dimerization factor (rice-mele)");
    sub->add_option("-J,--j-hop", opt.j_hop, "in-plane hopping (bilayer)");
    sub->add_option("-T,--t-hop", opt.t_hop, "rung hopping (bilayer)");
    if (with_gamma)
      sub->add_option("--gamma", opt.gamma, "gain/loss strength");
    sub->add_option("--lattice", opt.lattice_path, "coupling JSON (custom model)");
    sub->add_option("-o,--output", opt.output, "output path (default: stdout)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* bands = app.add_subcommand("bands", "band energies on the momentum grid");
  add_model(bands, {"bilayer"}, true);
  bands->add_flag("--full", opt.full, "emit the negative branch as extra rows");

  CLI::App* dos = app.add_subcommand("dos", "density of states histogram");
  add_model(dos, {"bilayer"}, true);
  dos->add_option("--bins", opt.bins, "histogram bin count");

  CLI::App* scan = app.add_subcommand("scan", "sweep gamma and locate the transition");
  add_model(scan, {"rice-mele", "bilayer", "custom"}, false);
  scan->add_option("--gamma-from", opt.gamma_from, "first gamma")->required();
  scan->add_option("--gamma-to", opt.gamma_to, "last gamma")->required();
  scan->add_option("--steps", opt.steps, "number of scan points")->required();

  CLI::App* spectrum = app.add_subcommand("spectrum", "exact spectrum report");
  add_model(spectrum, {"rice-mele", "bilayer", "custom"}, true);
  spectrum->add_flag("--vectors", opt.vectors, "include eigenvectors in JSON output");

  CLI::App* verify = app.add_subcommand("verify", "self-check report for one model");
  add_model(verify, {"rice-mele", "bilayer", "custom"}, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ctbands: " << e.what() << '\n';
    return kExitConfig;
  }

  for (const auto& [value, name] :
       {std::pair{opt.delta, "delta"}, {opt.j_hop, "J"}, {opt.t_hop, "T"},
        {opt.gamma, "gamma"}, {opt.gamma_from, "gamma-from"}, {opt.gamma_to, "gamma-to"}})
    require_finite(value, name);

  if (opt.model == "custom" && opt.lattice_path.empty())
    fail(kExitConfig, "custom model needs --lattice");
  if (opt.model != "custom" && !opt.lattice_path.empty())
    fail(kExitConfig, "--lattice applies to the custom model only");
  if (opt.model != "custom" && opt.n == 0)
    fail(kExitConfig, "-N is required for the built-in models");

  try {
    if (bands->parsed()) return run_bands(opt);
    if (dos->parsed()) return run_dos(opt);
    if (scan->parsed()) return run_scan(opt);
    if (spectrum->parsed()) {
      if (!spectrum->count("--format")) opt.format = "json";
      return run_spectrum(opt);
    }
    if (!verify->count("--format")) opt.format = "json";
    return run_verify(opt);
  } catch (const ctbands::Error& e) {
    fail(e);
  } catch (const std::exception& e) {
    fail(kExitCompute, e.what());
  }
}
