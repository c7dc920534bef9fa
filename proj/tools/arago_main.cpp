// Command-line front end: profile evaluation, Gouy phases, detector
// convolution, fitting, brute-force validation and SVG plots.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arago/coherent.hpp"
#include "arago/csv.hpp"
#include "arago/decoherent.hpp"
#include "arago/detector.hpp"
#include "arago/fit.hpp"
#include "arago/oracle.hpp"
#include "arago/run_config.hpp"
#include "arago/svg.hpp"

namespace {

using namespace arago;

struct CommonArgs {
  std::string config_path;
  std::string data_path;
  std::string out_path;
  std::string grid_text;
  std::string norm_text;
  bool no_gouy = false;
};

RunConfig effective_config(const CommonArgs& args) {
  if (args.config_path.empty()) {
    throw CLI::RequiredError("--config");
  }
  RunConfig rc = load_config(args.config_path);
  if (!args.grid_text.empty()) {
    try {
      rc.grid = parse_grid_spec(args.grid_text);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--grid", e.what());
    }
  }
  if (!args.norm_text.empty()) {
    try {
      rc.norm = normalization_from_name(args.norm_text);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--norm", e.what());
    }
  }
  if (!args.out_path.empty()) rc.out = args.out_path;
  return rc;
}

std::vector<double> screen_grid(const RunConfig& rc) {
  if (rc.grid.automatic) return default_screen_grid(rc.physical, rc.grid.points);
  return linspace(rc.grid.lo, rc.grid.hi, rc.grid.points);
}

double require_ell(const RunConfig& rc) {
  if (!rc.has_coherence) {
    throw std::runtime_error(
        "config has no coherence model (set 'ell' or 'ell0' + 'lambda_rate')");
  }
  return coherence_length(rc.coherence, rc.physical.tau);
}

void emit(const RunConfig& rc, const IntensityProfile& profile) {
  if (rc.out.empty()) {
    write_profile_csv(std::cout, profile);
    return;
  }
  std::ofstream out(rc.out);
  if (!out) throw std::runtime_error("cannot write '" + rc.out + "'");
  write_profile_csv(out, profile);
}

int run_coherent(const CommonArgs& args) {
  const RunConfig rc = effective_config(args);
  emit(rc, coherent_profile(rc.physical, screen_grid(rc), !args.no_gouy, rc.norm));
  return 0;
}

int run_decoherent(const CommonArgs& args) {
  const RunConfig rc = effective_config(args);
  const double ell = require_ell(rc);
  emit(rc, decoherent_profile(rc.physical, ell, screen_grid(rc), !args.no_gouy,
                              rc.norm));
  return 0;
}

int run_gouy(const CommonArgs& args) {
  const RunConfig rc = effective_config(args);
  const FreeBeamParams f = free_params(rc.physical, rc.physical.t + rc.physical.tau);
  const SlitBeamParams s = slit_params(rc.physical);
  std::cout << "quantity,rad\n";
  std::cout << "mu_free," << format_double(f.mu) << '\n';
  std::cout << "mu_slit," << format_double(s.mu) << '\n';
  std::cout << "mu_coherent," << format_double(coherent_gouy_difference(rc.physical))
            << '\n';
  if (rc.has_coherence) {
    const double mu_ell = gouy_partial(rc.physical, require_ell(rc));
    std::cout << "mu_partial," << format_double(mu_ell) << '\n';
    std::cout << "abs_mu_partial," << format_double(std::abs(mu_ell)) << '\n';
  }
  return 0;
}

int run_convolve(const CommonArgs& args) {
  const RunConfig rc = effective_config(args);
  if (args.data_path.empty()) throw CLI::RequiredError("--data");
  const IntensityProfile in_profile = read_profile_csv(args.data_path);
  emit(rc, convolve_detector(in_profile, rc.detector));
  return 0;
}

int run_fit(const CommonArgs& args, const std::vector<std::string>& free_names) {
  const RunConfig rc = effective_config(args);
  if (args.data_path.empty()) throw CLI::RequiredError("--data");
  const DataSet data = read_dataset_csv(args.data_path);

  NonlinearFitSpec spec;
  spec.ell = require_ell(rc);
  spec.sigma_d = rc.detector.sigma_d;
  for (const std::string& name : free_names) {
    if (name == "ell") {
      spec.free_ell = true;
      spec.ell_bounds = {spec.ell / 10.0, spec.ell * 10.0};
    } else if (name == "sigma_d") {
      if (!(spec.sigma_d > 0)) {
        throw std::runtime_error("--free sigma_d needs a positive sigma_d in the config");
      }
      spec.free_sigma_d = true;
      spec.sigma_d_bounds = {spec.sigma_d / 10.0, spec.sigma_d * 10.0};
    } else {
      throw CLI::ValidationError("--free", "unknown parameter '" + name + "'");
    }
  }

  const FitResult r = nonlinear_fit(rc.physical, data, spec);

  std::ostringstream report;
  report << "fit report\n";
  report << "model: partially coherent intensity, detector-convolved, peak-one\n";
  report << "metric: " << r.meta << '\n';
  report << "points = " << data.xs.size() << '\n';
  report << "ell = " << format_double(r.ell) << " m ("
         << (r.ell_fitted ? "fitted" : "fixed") << ")\n";
  report << "sigma_d = " << format_double(r.sigma_d) << " m ("
         << (r.sigma_d_fitted ? "fitted" : "fixed") << ")\n";
  report << "a = " << format_double(r.a) << " +- " << format_double(r.a_stderr)
         << '\n';
  report << "b = " << format_double(r.b) << " +- " << format_double(r.b_stderr)
         << '\n';
  report << "residual_norm = " << format_double(r.residual_norm) << '\n';
  if (r.chi2_valid) report << "chi2 = " << format_double(r.chi2) << '\n';
  report << "model_evals = " << r.model_evals << '\n';
  report << "hit_bounds = " << (r.hit_bounds ? "yes" : "no") << '\n';

  std::ostringstream residuals;
  residuals << "x_um,residual\n";
  for (std::size_t i = 0; i < data.xs.size(); ++i) {
    residuals << format_double(data.xs[i] * 1e6) << ','
              << format_double(r.residuals[i]) << '\n';
  }

  if (rc.out.empty()) {
    std::cout << report.str() << '\n' << residuals.str();
  } else {
    std::ofstream rep(rc.out);
    if (!rep) throw std::runtime_error("cannot write '" + rc.out + "'");
    rep << report.str();
    const std::string res_path = rc.out + ".residuals.csv";
    std::ofstream res(res_path);
    if (!res) throw std::runtime_error("cannot write '" + res_path + "'");
    res << residuals.str();
  }
  return 0;
}

PhysicalConfig random_neighbor_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, uni(rng));
  };
  PhysicalConfig cfg;
  cfg.mass = log_uniform(1e-27, 1e-26);
  cfg.sigma0 = log_uniform(20e-6, 120e-6);
  cfg.beta = cfg.sigma0 * log_uniform(0.5, 3.0);
  const double tau0 = cfg.mass * cfg.sigma0 * cfg.sigma0 / cfg.hbar;
  cfg.t = tau0 * log_uniform(0.25, 2.5);
  cfg.tau = tau0 * log_uniform(0.25, 2.5);
  return cfg;
}

int run_oracle(const CommonArgs& args, const std::string& check, unsigned trials,
               unsigned seed) {
  const RunConfig rc = effective_config(args);
  const QuadratureSpec q;
  std::cout << "check,value\n";

  std::vector<PhysicalConfig> configs{rc.physical};
  if (trials > 0) {
    std::mt19937_64 rng(seed);
    configs.clear();
    for (unsigned i = 0; i < trials; ++i) configs.push_back(random_neighbor_config(rng));
  }

  for (std::size_t c = 0; c < configs.size(); ++c) {
    const PhysicalConfig& cfg = configs[c];
    const std::string tag = trials > 0 ? "[" + std::to_string(c) + "]" : "";
    const std::vector<double> grid =
        linspace(-3.0 * free_params(cfg, cfg.t + cfg.tau).b,
                 3.0 * free_params(cfg, cfg.t + cfg.tau).b, 201);

    if (check == "free") {
      const auto oracle = oracle_psi_free_grid(cfg, grid, cfg.t + cfg.tau, q);
      double peak = 0, dev = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) peak = std::max(peak, std::abs(oracle[i]));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dev = std::max(dev, std::abs(oracle[i] - psi_free(cfg, grid[i], cfg.t + cfg.tau)));
      }
      std::cout << "psi_free_max_rel_dev" << tag << ',' << format_double(dev / peak) << '\n';
    } else if (check == "slit") {
      const auto oracle = oracle_psi_slit_grid(cfg, grid, q);
      double peak = 0, dev = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) peak = std::max(peak, std::abs(oracle[i]));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dev = std::max(dev, std::abs(oracle[i] - psi_slit(cfg, grid[i])));
      }
      std::cout << "psi_slit_max_rel_dev" << tag << ',' << format_double(dev / peak) << '\n';
    } else if (check == "babinet") {
      const double dev = oracle_babinet_identity(cfg, grid, q);
      std::cout << "babinet_max_rel_dev" << tag << ',' << format_double(dev) << '\n';
    } else if (check == "coherent") {
      const auto of = oracle_psi_free_grid(cfg, grid, cfg.t + cfg.tau, q);
      const auto os = oracle_psi_slit_grid(cfg, grid, q);
      std::vector<double> closed(grid.size()), amp(grid.size());
      double peak = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        closed[i] = coherent_intensity(cfg, grid[i], true);
        amp[i] = std::norm(of[i] - os[i]);
        peak = std::max(peak, closed[i]);
      }
      double dev = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dev = std::max(dev, std::abs(closed[i] - amp[i]));
      }
      std::cout << "coherent_intensity_sup_dev" << tag << ',' << format_double(dev / peak)
                << '\n';
    } else if (check == "decoherent") {
      const double ell = require_ell(rc);
      IntensityProfile oracle = oracle_decoherent_profile(cfg, ell, grid, q);
      apply_normalization(oracle, Normalization::peak_one);
      IntensityProfile closed = decoherent_profile(cfg, ell, grid, true,
                                                   Normalization::peak_one);
      double dev = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dev = std::max(dev, std::abs(oracle.values[i] - closed.values[i]));
      }
      std::cout << "decoherent_intensity_sup_dev" << tag << ',' << format_double(dev)
                << '\n';
    } else {
      throw CLI::ValidationError("oracle", "unknown check '" + check + "'");
    }
  }
  return 0;
}

int run_plot(const std::vector<std::string>& inputs, const std::string& out_path) {
  if (out_path.empty()) throw CLI::RequiredError("--out");
  std::vector<PlotSeries> series;
  for (const std::string& path : inputs) {
    PlotSeries s;
    const std::size_t slash = path.find_last_of('/');
    s.label = slash == std::string::npos ? path : path.substr(slash + 1);
    s.profile = read_profile_csv(path);
    series.push_back(std::move(s));
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  write_profiles_svg(out, series);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matter-wave Poisson spot profiles, Gouy phases and fits"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> free_names;
  std::vector<std::string> plot_inputs;
  std::string oracle_check;
  unsigned trials = 0;
  unsigned seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_grid = true) {
    cmd->add_option("--config", args.config_path, "config file (key = value)");
    cmd->add_option("--out", args.out_path, "output path (default stdout)");
    if (with_grid) {
      cmd->add_option("--grid", args.grid_text, "MIN:MAX:N with unit suffixes, or auto");
      cmd->add_flag("--no-gouy", args.no_gouy, "drop the Gouy phase from the interference term");
      cmd->add_option("--norm", args.norm_text, "raw, peak or area");
    }
  };

  CLI::App* coherent = app.add_subcommand("coherent", "coherent intensity profile CSV");
  add_common(coherent);
  CLI::App* decoherent =
      app.add_subcommand("decoherent", "partially coherent intensity profile CSV");
  add_common(decoherent);
  CLI::App* gouy = app.add_subcommand("gouy", "print Gouy phases (CSV to stdout)");
  add_common(gouy, false);
  CLI::App* convolve =
      app.add_subcommand("convolve", "apply the detector aperture to a profile CSV");
  add_common(convolve, false);
  convolve->add_option("--data", args.data_path, "input profile CSV");
  CLI::App* fit = app.add_subcommand("fit", "affine / nonlinear fit to count-rate data");
  add_common(fit, false);
  fit->add_option("--data", args.data_path, "dataset CSV (x_um,rate[,rate_err])");
  fit->add_option("--free", free_names, "free parameters: ell, sigma_d")
      ->delimiter(',');
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force quadrature validation checks");
  add_common(oracle, false);
  oracle->add_option("check", oracle_check, "free, slit, babinet, coherent or decoherent")
      ->required();
  oracle->add_option("--trials", trials, "number of randomized configurations (0 = config as-is)");
  oracle->add_option("--seed", seed, "RNG seed for randomized trials");
  CLI::App* plot = app.add_subcommand("plot", "render profile CSVs to a static SVG");
  plot->add_option("inputs", plot_inputs, "profile CSV paths")->required();
  plot->add_option("--out", args.out_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(coherent)) return run_coherent(args);
    if (app.got_subcommand(decoherent)) return run_decoherent(args);
    if (app.got_subcommand(gouy)) return run_gouy(args);
    if (app.got_subcommand(convolve)) return run_convolve(args);
    if (app.got_subcommand(fit)) return run_fit(args, free_names);
    if (app.got_subcommand(oracle)) return run_oracle(args, oracle_check, trials, seed);
    if (app.got_subcommand(plot)) return run_plot(plot_inputs, args.out_path);
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: missing " << e.get_name() << '\n';
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
