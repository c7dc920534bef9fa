#pragma once

#include <complex>

#include "arago/physical_config.hpp"

namespace arago {

using ComplexAmplitude = std::complex<double>;

// Parameters of the freely spreading Gaussian beam. The curvature parameter r
// carries time units: the wavefront phase is m x^2 / (2 hbar r).
struct FreeBeamParams {
  double b = 0;     // beam width [m]
  double r = 0;     // wavefront curvature time [s]; +inf at elapsed = 0
  double mu = 0;    // Gouy phase [rad], in (-pi/4, 0]
  double tau0 = 0;  // aging time m sigma0^2 / hbar [s]
};

// Beam parameters after passing the Gaussian slit and propagating to the
// screen.
struct SlitBeamParams {
  double B = 0;   // beam width [m]
  double R = 0;   // wavefront curvature time [s]
  double mu = 0;  // Gouy phase [rad], in (-pi/2, 0)
};

// Aging time tau0 = m sigma0^2 / hbar.
double characteristic_time(const PhysicalConfig& cfg);

// Free-beam width, curvature and Gouy phase after `elapsed` seconds.
// elapsed = 0 reports r = +inf (flat wavefront) and mu = 0.
FreeBeamParams free_params(const PhysicalConfig& cfg, double elapsed);

// Beam parameters for source -> slit -> screen propagation. The Gouy phase
// is evaluated with a two-argument arctangent, so it stays continuous where
// the scalar arctangent form of the phase has a singular denominator
// (1 - t tau sigma0^2 / (tau0^2 beta^2) = 0); mu crosses -pi/4 there.
SlitBeamParams slit_params(const PhysicalConfig& cfg);

// Slit parameters in the limit of vanishing dwell time behind the slit:
// only the width is pinched, B^2 = b^2 beta^2 / (beta^2 + b^2); curvature and
// Gouy phase keep their free values at time t.
SlitBeamParams obstacle_plane_params(const PhysicalConfig& cfg);

// Unit-normalized Gaussian amplitudes at the screen.
ComplexAmplitude psi_free(const PhysicalConfig& cfg, double x, double elapsed);
ComplexAmplitude psi_slit(const PhysicalConfig& cfg, double x);

}  // namespace arago
