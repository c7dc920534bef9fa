#include "arago/beam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace arago {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("PhysicalConfig: ") + name +
                                " must be positive and finite");
  }
}

}  // namespace

void PhysicalConfig::validate() const {
  require_positive(mass, "mass");
  require_positive(sigma0, "sigma0");
  require_positive(beta, "beta");
  require_positive(t, "t");
  require_positive(tau, "tau");
  require_positive(hbar, "hbar");
}

double characteristic_time(const PhysicalConfig& cfg) {
  cfg.validate();
  return cfg.mass * cfg.sigma0 * cfg.sigma0 / cfg.hbar;
}

FreeBeamParams free_params(const PhysicalConfig& cfg, double elapsed) {
  cfg.validate();
  if (!(elapsed >= 0) || !std::isfinite(elapsed)) {
    throw std::invalid_argument("free_params: elapsed must be >= 0");
  }
  FreeBeamParams p;
  p.tau0 = characteristic_time(cfg);
  const double z = elapsed / p.tau0;
  p.b = cfg.sigma0 * std::sqrt(1.0 + z * z);
  // r(T) = T (1 + (tau0/T)^2) diverges at T = 0: flat wavefront.
  p.r = elapsed > 0 ? elapsed + p.tau0 * p.tau0 / elapsed
                    : std::numeric_limits<double>::infinity();
  p.mu = -0.5 * std::atan(z);
  return p;
}

SlitBeamParams slit_params(const PhysicalConfig& cfg) {
  cfg.validate();
  const FreeBeamParams f = free_params(cfg, cfg.t);
  const double m_over_hbar = cfg.mass / cfg.hbar;

  // P and Q are the inverse-width^2 and curvature combinations entering the
  // transmitted Gaussian; both strictly positive.
  const double P = 1.0 / (cfg.beta * cfg.beta) + 1.0 / (f.b * f.b);
  const double Q = m_over_hbar * (1.0 / cfg.tau + 1.0 / f.r);

  SlitBeamParams s;
  const double k_tau = m_over_hbar / cfg.tau;  // m / (hbar tau)
  s.B = std::sqrt((P * P + Q * Q) / (k_tau * k_tau * P));
  s.R = cfg.tau * (P * P + Q * Q) /
        (P * P + cfg.t / (cfg.sigma0 * cfg.sigma0 * f.b * f.b) *
                     (1.0 / cfg.tau + 1.0 / f.r));

  // Two-argument arctangent keeps the phase continuous through the zero of
  // the scalar-form denominator; there mu passes through -pi/4 exactly.
  const double num = cfg.t + cfg.tau * (1.0 + cfg.sigma0 * cfg.sigma0 /
                                                  (cfg.beta * cfg.beta));
  const double den =
      f.tau0 * (1.0 - cfg.t * cfg.tau * cfg.sigma0 * cfg.sigma0 /
                          (f.tau0 * f.tau0 * cfg.beta * cfg.beta));
  s.mu = -0.5 * std::atan2(num, den);
  return s;
}

SlitBeamParams obstacle_plane_params(const PhysicalConfig& cfg) {
  cfg.validate();
  const FreeBeamParams f = free_params(cfg, cfg.t);
  SlitBeamParams s;
  const double b2 = f.b * f.b;
  const double beta2 = cfg.beta * cfg.beta;
  s.B = std::sqrt(b2 * beta2 / (beta2 + b2));
  s.R = f.r;
  s.mu = f.mu;
  return s;
}

namespace {

ComplexAmplitude gaussian_amplitude(double x, double width, double inv_r,
                                    double gouy, double m_over_2hbar) {
  const double amp = std::exp(-x * x / (2.0 * width * width)) /
                     std::sqrt(width * std::sqrt(M_PI));
  const double phase = m_over_2hbar * x * x * inv_r + gouy;
  return std::polar(amp, phase);
}

}  // namespace

ComplexAmplitude psi_free(const PhysicalConfig& cfg, double x, double elapsed) {
  const FreeBeamParams f = free_params(cfg, elapsed);
  const double inv_r = std::isinf(f.r) ? 0.0 : 1.0 / f.r;
  return gaussian_amplitude(x, f.b, inv_r, f.mu, 0.5 * cfg.mass / cfg.hbar);
}

ComplexAmplitude psi_slit(const PhysicalConfig& cfg, double x) {
  const SlitBeamParams s = slit_params(cfg);
  return gaussian_amplitude(x, s.B, 1.0 / s.R, s.mu, 0.5 * cfg.mass / cfg.hbar);
}

}  // namespace arago
