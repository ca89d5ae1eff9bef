// Command-line front end for the zeta-drive pipeline.
//
// Exit codes: 0 success, 1 invariant or estimation failure, 2 usage error.

#include <zetadrive/zetadrive.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace zetadrive;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kOutputDirEnv = "ZETADRIVE_OUTPUT_DIR";

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  std::string out;
  std::optional<std::string> output_dir;
};

/// Defaults, then the environment, then the config file, then flags.
RunConfig resolve_config(const Common& c) {
  RunConfig cfg;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
  if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
  if (c.seed) cfg.seed = *c.seed;
  if (c.output_dir) cfg.output_dir = *c.output_dir;
  return cfg;
}

/// Output stream for `--out`: "-" is standard output, empty is
/// `<output_dir>/<fallback>`.
class Sink {
 public:
  Sink(const std::string& out, const RunConfig& cfg, const std::string& fallback) {
    if (out == "-") {
      os_ = &std::cout;
      return;
    }
    path_ = out.empty() ? (fs::path(cfg.output_dir) / fallback).string() : out;
    const auto parent = fs::path(path_).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    file_ = std::make_unique<std::ofstream>(path_, std::ios::binary);
    if (!*file_) throw UsageError("cannot open output file '" + path_ + "'");
    os_ = file_.get();
  }

  std::ostream& stream() { return *os_; }

  void close() {
    os_->flush();
    if (file_) {
      file_->close();
      std::cerr << "wrote " << path_ << '\n';
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

template <class T>
void override_if(const CLI::Option* opt, T& target, const T& value) {
  if (opt->count() > 0) target = value;
}

int cmd_verify_zeta(const Common& c, double e_min, double e_max, double step, double t_max) {
  const RunConfig cfg = resolve_config(c);
  if (e_min > e_max) throw UsageError("verify-zeta: e_min must not exceed e_max");
  const auto grid = make_grid(e_min, e_max, step);
  const auto rows = parallel_map<io::VerifyRow>(grid.size(), c.jobs, [&](std::size_t i) {
    const double E = grid[i];
    const double direct = g_value(E).real();
    const double via = re_g_via_vdp(E, t_max);
    return io::VerifyRow{E, direct, via, std::abs(direct - via)};
  });
  Sink sink(c.out, cfg, "verify_zeta.csv");
  io::write_verify(sink.stream(), rows);
  sink.close();
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.diff);
  std::cerr << "max abs_diff " << csv::format_double(worst) << '\n';
  return worst > 1e-4 ? kExitFailure : kExitOk;
}

int cmd_waveform(const Common& c, double E, std::optional<double> omega,
                 std::optional<int> n_terms, int samples) {
  RunConfig cfg = resolve_config(c);
  if (omega) cfg.omega = *omega;
  if (n_terms) cfg.n_terms = *n_terms;
  const auto w = sine_coefficients(cfg.driving(E));
  std::cerr << w.sine_coefficients().size() << " coefficients\n";
  Sink sink(c.out, cfg, "waveform.csv");
  io::write_waveform(sink.stream(), export_waveform(w, samples));
  sink.close();
  return kExitOk;
}

int cmd_quasienergy(const Common& c, const RunConfig& cfg) {
  const auto grid = make_grid(cfg.e_min, cfg.e_max, cfg.e_step);
  const auto rows = parallel_map<io::QuasienergyRow>(grid.size(), c.jobs, [&](std::size_t i) {
    const auto w = sine_coefficients(cfg.driving(grid[i]));
    const auto spec = quasienergies(propagate_period(w));
    return io::QuasienergyRow{grid[i], cfg.omega, spec.epsilon, effective_tunneling(w).value};
  });
  Sink sink(c.out, cfg, "quasienergy.csv");
  io::write_quasienergy(sink.stream(), rows);
  sink.close();
  return kExitOk;
}

int cmd_scan(const Common& c, const RunConfig& cfg) {
  const auto grid = make_grid(cfg.e_min, cfg.e_max, cfg.e_step);
  ScanOptions opt;
  opt.base = cfg.driving();
  opt.shots = cfg.shots;
  opt.seed = cfg.seed;
  opt.jobs = c.jobs;
  std::cerr << "scan: " << grid.size() << " points, omega " << cfg.omega << ", "
            << resolve_jobs(c.jobs) << " workers\n";
  const auto recs = scan(grid, opt);
  int failed = 0;
  for (const auto& r : recs) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "scan: E = " << r.E << ": " << r.error << '\n';
    }
  }
  Sink sink(c.out, cfg, "scan.csv");
  io::write_scan(sink.stream(), recs);
  sink.close();
  return failed > 0 ? kExitFailure : kExitOk;
}

int cmd_extract(const Common& c, const RunConfig& cfg, const std::string& scan_path,
                const std::string& law, double threshold) {
  std::ifstream in(scan_path);
  if (!in) throw UsageError("cannot open scan file '" + scan_path + "'");
  const auto recs = io::read_scan(in);
  ExtractOptions opt;
  opt.n_boot = cfg.n_boot;
  opt.seed = cfg.seed;
  opt.jobs = c.jobs;
  opt.threshold = threshold;
  if (law == "uniform") {
    opt.law = BootstrapLaw::uniform;
  } else if (law == "gaussian") {
    opt.law = BootstrapLaw::gaussian_truncated;
  } else {
    throw UsageError("extract: --law must be uniform or gaussian");
  }
  const auto res = extract_zeros(recs, opt);
  if (res.estimates.empty() && res.failures.empty()) {
    std::cerr << "warning: no sign change of S in the scan\n";
  }
  for (const auto& z : res.estimates) {
    if (z.low_retention()) {
      std::cerr << "warning: crossing near E = " << z.mean << " kept " << z.n_retained << " of "
                << z.n_boot << " draws\n";
    }
  }
  for (const auto& f : res.failures) {
    std::cerr << "extract: window [" << f.lo << ", " << f.hi << "]: " << f.message << '\n';
  }
  Sink sink(c.out, cfg, "zeros.csv");
  io::write_zeros(sink.stream(), res.estimates);
  sink.close();
  return res.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_primes(const Common& c, const RunConfig& cfg, const std::string& zeros_path,
               const std::string& peaks_out) {
  std::vector<double> zeros;
  if (zeros_path.empty()) {
    for (double z : known_zeros()) {
      if (z < cfg.zero_limit) zeros.push_back(z);
    }
  } else {
    std::ifstream in(zeros_path);
    if (!in) throw UsageError("cannot open zeros file '" + zeros_path + "'");
    zeros = io::read_zero_means(in, true);
  }
  if (zeros.empty()) throw UsageError("primes: the zero list is empty");

  const auto n = static_cast<std::size_t>(std::floor((cfg.x_max - cfg.x_min) / cfg.x_step + 1e-9)) + 1;
  std::vector<double> x(n), h(n), J(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cfg.x_min + static_cast<double>(i) * cfg.x_step;
  const auto hv = parallel_map<double>(n, c.jobs, [&](std::size_t i) { return h_function(x[i], zeros); });
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = hv[i];
    J[i] = riemann_J(x[i]);
  }
  const auto peaks = detect_peaks(x, h, default_min_prominence(h, cfg.prominence));

  Sink sink(c.out, cfg, "primes.csv");
  io::write_staircase(sink.stream(), x, h, J);
  sink.close();
  Sink peak_sink(peaks_out, cfg, "peaks.csv");
  io::write_peaks(peak_sink.stream(), peaks);
  peak_sink.close();
  std::cerr << peaks.size() << " peaks from " << zeros.size() << " zeros\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-zero Floquet drive simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::uint64_t seed = 0;
  std::string output_dir;
  app.add_option("--config", common.config_path, "key = value configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", common.jobs, "worker threads (0 = all cores)");
  app.add_option("--out", common.out, "output CSV path, '-' for standard output");
  auto* dir_opt = app.add_option("--output-dir", output_dir,
                                 std::string("default output directory (env ") + kOutputDirEnv + ")");

  // Grid and drive overrides shared by quasienergy and scan.
  double omega = 0, e_min = 0, e_max = 0, e_step = 0;
  int n_terms = 0, substeps = 0, n_boot = 0;
  double window_scale = 0;
  struct GridOpts {
    CLI::Option *omega, *e_min, *e_max, *e_step, *n_terms, *substeps, *window_scale;
  };
  auto add_grid = [&](CLI::App* sub) {
    return GridOpts{sub->add_option("--omega", omega, "driving frequency"),
                    sub->add_option("--e-min", e_min, "first grid energy"),
                    sub->add_option("--e-max", e_max, "last grid energy"),
                    sub->add_option("--e-step", e_step, "grid spacing"),
                    sub->add_option("--n-terms", n_terms, "Fourier terms"),
                    sub->add_option("--substeps", substeps, "propagation steps per period"),
                    sub->add_option("--window-scale", window_scale, "van der Pol time per unit time")};
  };
  auto apply_grid = [&](const GridOpts& g, RunConfig& cfg) {
    override_if(g.omega, cfg.omega, omega);
    override_if(g.e_min, cfg.e_min, e_min);
    override_if(g.e_max, cfg.e_max, e_max);
    override_if(g.e_step, cfg.e_step, e_step);
    override_if(g.n_terms, cfg.n_terms, n_terms);
    override_if(g.substeps, cfg.substeps, substeps);
    override_if(g.window_scale, cfg.window_scale, window_scale);
  };

  auto* verify = app.add_subcommand("verify-zeta", "compare Re g with its van der Pol integral");
  double v_min = 10.0, v_max = 200.0, v_step = 0.5, t_max = 60.0;
  verify->add_option("--e-min", v_min, "first energy");
  verify->add_option("--e-max", v_max, "last energy");
  verify->add_option("--step", v_step, "energy step");
  verify->add_option("--t-max", t_max, "upper integration limit");

  auto* waveform = app.add_subcommand("waveform", "export one period of the driving function");
  double w_E = 1.0, w_omega = 0;
  int w_terms = 0, w_samples = 1024;
  waveform->add_option("--E", w_E, "zeta height");
  auto* w_omega_opt = waveform->add_option("--omega", w_omega, "driving frequency");
  auto* w_terms_opt = waveform->add_option("--n-terms", w_terms, "Fourier terms");
  waveform->add_option("--samples", w_samples, "samples over [0, 2T)");

  auto* quasi = app.add_subcommand("quasienergy", "quasienergy and J_eff over an E grid");
  const auto quasi_grid = add_grid(quasi);

  auto* scan_cmd = app.add_subcommand("scan", "S parameter over an E grid");
  const auto scan_grid = add_grid(scan_cmd);
  std::string shots_text;
  auto* shots_opt = scan_cmd->add_option("--shots", shots_text, "shots per point, 0 = exact, auto");

  auto* extract = app.add_subcommand("extract", "bootstrap zero crossings of a scan");
  std::string scan_path, law = "uniform";
  double threshold = 0.1;
  extract->add_option("--scan", scan_path, "scan CSV")->required();
  auto* boot_opt = extract->add_option("--n-boot", n_boot, "bootstrap draws");
  extract->add_option("--law", law, "uniform or gaussian");
  extract->add_option("--threshold", threshold, "|zeta| threshold for a Riemann zero");

  auto* primes = app.add_subcommand("primes", "h(x), J(x) and peaks from zeros");
  std::string zeros_path, peaks_out;
  double p_xmax = 0, p_prom = 0;
  primes->add_option("--zeros", zeros_path, "zeros CSV (default: catalogue below zero_limit)");
  auto* xmax_opt = primes->add_option("--x-max", p_xmax, "largest x");
  auto* prom_opt = primes->add_option("--prominence", p_prom, "peak prominence as a fraction of max |h|");
  primes->add_option("--peaks-out", peaks_out, "peaks CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (seed_opt->count()) common.seed = seed;
  if (dir_opt->count()) common.output_dir = output_dir;

  try {
    if (verify->parsed()) return cmd_verify_zeta(common, v_min, v_max, v_step, t_max);
    if (waveform->parsed()) {
      return cmd_waveform(common, w_E,
                          w_omega_opt->count() ? std::optional<double>(w_omega) : std::nullopt,
                          w_terms_opt->count() ? std::optional<int>(w_terms) : std::nullopt,
                          w_samples);
    }
    RunConfig cfg = resolve_config(common);
    if (quasi->parsed()) {
      apply_grid(quasi_grid, cfg);
      cfg.validate();
      return cmd_quasienergy(common, cfg);
    }
    if (scan_cmd->parsed()) {
      apply_grid(scan_grid, cfg);
      if (shots_opt->count()) cfg.set("shots", shots_text);
      cfg.validate();
      return cmd_scan(common, cfg);
    }
    if (extract->parsed()) {
      override_if(boot_opt, cfg.n_boot, n_boot);
      return cmd_extract(common, cfg, scan_path, law, threshold);
    }
    if (primes->parsed()) {
      override_if(xmax_opt, cfg.x_max, p_xmax);
      override_if(prom_opt, cfg.prominence, p_prom);
      cfg.validate();
      return cmd_primes(common, cfg, zeros_path, peaks_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EstimationError& e) {
    std::cerr << "estimation failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
