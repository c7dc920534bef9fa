#include "arago/decoherent.hpp"

#include <cmath>
#include <stdexcept>

#include "arago/csv.hpp"

namespace arago {

void CoherenceModel::validate() const {
  if (mode == CoherenceMode::direct_ell) {
    if (!(ell > 0) || !std::isfinite(ell)) {
      throw std::invalid_argument("CoherenceModel: direct_ell requires ell > 0");
    }
  } else {
    if (!(ell0 > 0) || !std::isfinite(ell0)) {
      throw std::invalid_argument("CoherenceModel: evolved_ell requires ell0 > 0");
    }
    if (lambda_rate < 0 || !std::isfinite(lambda_rate)) {
      throw std::invalid_argument("CoherenceModel: lambda_rate must be >= 0");
    }
  }
}

double coherence_length(const CoherenceModel& model, double tau) {
  model.validate();
  if (!(tau >= 0)) throw std::invalid_argument("coherence_length: tau must be >= 0");
  if (model.mode == CoherenceMode::direct_ell) return model.ell;
  return model.ell0 /
         std::sqrt(1.0 + (2.0 * model.lambda_rate * tau / 3.0) * model.ell0 *
                             model.ell0);
}

DecoherentParams decoherent_params(const PhysicalConfig& cfg, double ell) {
  cfg.validate();
  if (!(ell > 0) || !std::isfinite(ell)) {
    throw std::invalid_argument("decoherent_params: ell must be positive");
  }
  const FreeBeamParams f = free_params(cfg, cfg.t);
  const double b2 = f.b * f.b;
  const double beta2 = cfg.beta * cfg.beta;
  const double ell2 = ell * ell;
  // kappa combines the obstacle-plane curvature with the remaining flight.
  const double kappa =
      0.5 * cfg.mass / cfg.hbar * (1.0 / f.r + 1.0 / cfg.tau);

  DecoherentParams p;
  p.ell = ell;
  p.eta = b2 * ((0.5 / b2) * (0.5 / b2 + 1.0 / ell2) + kappa * kappa);
  p.eta_prime = (beta2 * b2 / (beta2 + b2)) *
                (kappa * kappa + (0.5 / b2 + 0.5 / beta2) *
                                     (0.5 / b2 + 0.5 / beta2 + 1.0 / ell2));

  // Real part of the cross-term quadratic form; strictly positive.
  const double re_delta = (beta2 + b2) / (4.0 * beta2 * b2) * (1.0 / b2 + 1.0 / ell2) +
                          1.0 / (4.0 * ell2 * b2) + kappa * kappa;
  const double im_delta = 0.5 * kappa / beta2;

  p.C = 4.0 * cfg.hbar * cfg.hbar * cfg.tau * cfg.tau *
        (im_delta * im_delta + re_delta * re_delta);
  p.alpha = cfg.mass * cfg.mass / p.C * (1.0 / b2 + 0.5 / beta2) * re_delta;
  p.delta = std::pow(cfg.mass, 3) / (4.0 * cfg.hbar * beta2 * p.C) *
            (1.0 / b2 + 0.5 / beta2) * (1.0 / f.r + 1.0 / cfg.tau);
  return p;
}

double gouy_partial(const PhysicalConfig& cfg, double ell) {
  cfg.validate();
  if (!(ell > 0) || !std::isfinite(ell)) {
    throw std::invalid_argument("gouy_partial: ell must be positive");
  }
  const FreeBeamParams f = free_params(cfg, cfg.t);
  const double s2 = cfg.sigma0 * cfg.sigma0;
  const double beta2 = cfg.beta * cfg.beta;
  const double b2 = f.b * f.b;
  const double rpt = f.r + cfg.tau;
  const double a1 = beta2 * f.tau0 / (s2 * f.r * cfg.tau) * rpt * rpt;
  const double a2 = f.r * cfg.tau / f.tau0 * (1.0 + beta2 / b2) * (s2 / b2);
  const double decoh =
      f.r * cfg.tau / f.tau0 * (1.0 + 2.0 * beta2 / b2) * (s2 / (ell * ell));
  return -0.5 * std::atan(rpt / (a1 + a2 + decoh));
}

double decoherent_intensity(const PhysicalConfig& cfg, double ell, double x,
                            bool include_gouy) {
  const DecoherentParams p = decoherent_params(cfg, ell);
  const FreeBeamParams f = free_params(cfg, cfg.t);
  const double mu = include_gouy ? gouy_partial(cfg, ell) : 0.0;

  const double w = cfg.mass / (2.0 * cfg.hbar * cfg.tau);  // m / (2 hbar tau)
  const double term_free =
      std::sqrt(M_PI / p.eta) * std::exp(-w * w * x * x / p.eta);
  const double term_slit =
      std::sqrt(M_PI / p.eta_prime) * std::exp(-w * w * x * x / p.eta_prime);

  // Cross-term amplitude 2 sqrt(2 pi hbar tau) / (sqrt(b B0) C^(1/4)) with B0
  // the obstacle-plane width.
  const double B0 = obstacle_plane_params(cfg).B;
  const double coeff = 2.0 * std::sqrt(2.0 * M_PI * cfg.hbar * cfg.tau) /
                       (std::sqrt(f.b * B0) * std::pow(p.C, 0.25));
  const double cross = coeff * std::exp(-p.alpha * x * x) *
                       std::cos(p.delta * x * x + mu);

  const double value = term_free + term_slit - cross;
  const double scale = term_free + term_slit + std::abs(coeff);
  if (value < -1e-10 * scale) {
    throw std::logic_error("decoherent_intensity: negative intensity " +
                           format_double(value) + " at x = " + format_double(x));
  }
  return value;
}

IntensityProfile decoherent_profile(const PhysicalConfig& cfg, double ell,
                                    const std::vector<double>& grid,
                                    bool include_gouy, Normalization norm) {
  validate_grid(grid);
  IntensityProfile p;
  p.xs = grid;
  p.values.reserve(grid.size());
  for (double x : grid) {
    p.values.push_back(decoherent_intensity(cfg, ell, x, include_gouy));
  }
  p.meta = "decoherent ell=" + format_double(ell) +
           " gouy=" + std::string(include_gouy ? "1" : "0") +
           " m=" + format_double(cfg.mass) + " sigma0=" + format_double(cfg.sigma0) +
           " beta=" + format_double(cfg.beta) + " t=" + format_double(cfg.t) +
           " tau=" + format_double(cfg.tau);
  apply_normalization(p, norm);
  return p;
}

}  // namespace arago
