#include "arago/coherent.hpp"

#include <cmath>
#include <stdexcept>

#include "arago/csv.hpp"

namespace arago {

double coherent_gouy_difference(const PhysicalConfig& cfg) {
  cfg.validate();
  const double tau0 = characteristic_time(cfg);
  const double T = cfg.t + cfg.tau;
  const double num = cfg.tau * (tau0 * tau0 + cfg.t * T);
  const double den =
      tau0 * (cfg.tau * cfg.tau + cfg.beta * cfg.beta /
                                      (cfg.sigma0 * cfg.sigma0) *
                                      (T * T + tau0 * tau0));
  // den > 0 always, so the scalar arctangent stays on the principal branch
  // and mu lands in (-pi/4, 0).
  return -0.5 * std::atan(num / den);
}

double coherent_intensity(const PhysicalConfig& cfg, double x,
                          bool include_gouy) {
  const FreeBeamParams f = free_params(cfg, cfg.t + cfg.tau);
  const SlitBeamParams s = slit_params(cfg);
  const double mu = include_gouy ? coherent_gouy_difference(cfg) : 0.0;

  const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  const double term_free = inv_sqrt_pi / f.b * std::exp(-x * x / (f.b * f.b));
  const double term_slit = inv_sqrt_pi / s.B * std::exp(-x * x / (s.B * s.B));
  const double cross_mag =
      2.0 * inv_sqrt_pi / std::sqrt(f.b * s.B) *
      std::exp(-(0.5 / (f.b * f.b) + 0.5 / (s.B * s.B)) * x * x);
  const double phase =
      0.5 * cfg.mass / cfg.hbar * x * x * (1.0 / s.R - 1.0 / f.r) + mu;
  const double value = term_free + term_slit - cross_mag * std::cos(phase);

  // The combination is a squared modulus; a genuine negative marks a phase
  // convention bug, while cancellation roundoff may leave tiny negatives.
  const double scale = term_free + term_slit + cross_mag;
  if (value < -1e-10 * scale) {
    throw std::logic_error("coherent_intensity: negative intensity " +
                           format_double(value) + " at x = " + format_double(x));
  }
  return value;
}

IntensityProfile coherent_profile(const PhysicalConfig& cfg,
                                  const std::vector<double>& grid,
                                  bool include_gouy, Normalization norm) {
  validate_grid(grid);
  IntensityProfile p;
  p.xs = grid;
  p.values.reserve(grid.size());
  for (double x : grid) p.values.push_back(coherent_intensity(cfg, x, include_gouy));
  p.meta = "coherent gouy=" + std::string(include_gouy ? "1" : "0") +
           " m=" + format_double(cfg.mass) + " sigma0=" + format_double(cfg.sigma0) +
           " beta=" + format_double(cfg.beta) + " t=" + format_double(cfg.t) +
           " tau=" + format_double(cfg.tau);
  apply_normalization(p, norm);
  return p;
}

std::vector<double> default_screen_grid(const PhysicalConfig& cfg,
                                        std::size_t points) {
  const double b = free_params(cfg, cfg.t + cfg.tau).b;
  const double B = slit_params(cfg).B;
  const double half = 5.0 * std::max(b, B);
  return linspace(-half, half, points);
}

}  // namespace arago
