#pragma once

namespace arago {

// CODATA 2018 reduced Planck constant [J s]. Overridable per run through the
// config file.
inline constexpr double kHbar = 1.054571817e-34;

// Apparatus constants for one Poisson-spot run. All values in SI base units;
// the config loader converts from suffixed quantities (um, ms, ...).
struct PhysicalConfig {
  double mass = 0;      // particle mass [kg]
  double sigma0 = 0;    // initial transverse packet width [m]
  double beta = 0;      // Gaussian obstacle (slit) width [m]
  double t = 0;         // flight time source -> obstacle [s]
  double tau = 0;       // flight time obstacle -> screen [s]
  double hbar = kHbar;  // [J s]

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace arago
