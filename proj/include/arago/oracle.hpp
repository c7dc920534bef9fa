#pragma once

#include <cstddef>
#include <vector>

#include "arago/beam.hpp"
#include "arago/profile.hpp"

namespace arago {

// Controls for the brute-force propagation integrals. Node counts are derived
// from the integrand's local phase derivative (points_per_oscillation per
// Fresnel cycle) with a floor resolving the Gaussian envelopes; integration
// domains are truncated at half_width_sigmas local widths, so the truncation
// error is bounded by the complementary error function of that many sigmas.
struct QuadratureSpec {
  double half_width_sigmas = 10.0;
  double points_per_oscillation = 16.0;
  std::size_t max_points = 4'000'001;

  void validate() const;  // half_width_sigmas >= 6, points_per_oscillation >= 8
};

// Free propagation of the source packet by composite Simpson quadrature of
// the Fresnel integral. elapsed = 0 returns the initial packet directly.
// Throws std::runtime_error (reporting the required count) if the node count
// would exceed max_points.
ComplexAmplitude oracle_psi_free(const PhysicalConfig& cfg, double x,
                                 double elapsed, const QuadratureSpec& q);
std::vector<ComplexAmplitude> oracle_psi_free_grid(const PhysicalConfig& cfg,
                                                   const std::vector<double>& xs,
                                                   double elapsed,
                                                   const QuadratureSpec& q);

// Nested quadrature source -> slit -> screen. By default the result is
// rescaled to unit norm (matching the closed forms); with
// physical_transmission = true the raw transmitted amplitude is returned,
// whose norm is the slit transmission < 1. The rescaling factor is the L2
// norm of the masked slit-plane wave (propagation after the slit is unitary).
ComplexAmplitude oracle_psi_slit(const PhysicalConfig& cfg, double x,
                                 const QuadratureSpec& q,
                                 bool physical_transmission = false);
std::vector<ComplexAmplitude> oracle_psi_slit_grid(const PhysicalConfig& cfg,
                                                   const std::vector<double>& xs,
                                                   const QuadratureSpec& q,
                                                   bool physical_transmission = false);

// Propagates the slit-masked and complement-masked waves separately (physical
// transmission) and returns the maximum deviation of their sum from the free
// wave over the grid, relative to the peak free amplitude.
double oracle_babinet_identity(const PhysicalConfig& cfg,
                               const std::vector<double>& xs,
                               const QuadratureSpec& q);

// Partially coherent intensity by direct double quadrature of the
// density-matrix propagation integral, with the obstacle-plane state built
// from the closed-form free/slit Gaussians (unit-normalized convention).
// The integration runs in mean/difference coordinates; the difference range
// is clipped to min(full width, 10 ell). The result must be real to 1e-10
// relative per sample (Hermitian diagonal), else std::logic_error.
double oracle_decoherent_intensity(const PhysicalConfig& cfg, double ell,
                                   double x, const QuadratureSpec& q);
IntensityProfile oracle_decoherent_profile(const PhysicalConfig& cfg,
                                           double ell,
                                           const std::vector<double>& grid,
                                           const QuadratureSpec& q);

}  // namespace arago
