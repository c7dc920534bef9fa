#pragma once

#include <vector>

#include "arago/beam.hpp"
#include "arago/profile.hpp"

namespace arago {

// Gouy phase difference mu(t,tau) = mu_slit(t,tau) - mu_free(t+tau) between
// the slit and free paths, in closed form. Strictly negative for positive
// parameters; tends to 0 for tau -> 0 or beta -> inf.
double coherent_gouy_difference(const PhysicalConfig& cfg);

// Fully coherent Babinet intensity |psi_free - psi_slit|^2 at the screen,
// evaluated from the closed three-term form. With include_gouy = false the
// Gouy phase difference inside the interference cosine is set to zero.
// Raises std::logic_error if the combination dips negative beyond roundoff.
double coherent_intensity(const PhysicalConfig& cfg, double x,
                          bool include_gouy = true);

IntensityProfile coherent_profile(const PhysicalConfig& cfg,
                                  const std::vector<double>& grid,
                                  bool include_gouy, Normalization norm);

// Symmetric grid of `points` samples over +-5 max(b, B); resolves the central
// peak and the flanking fringes.
std::vector<double> default_screen_grid(const PhysicalConfig& cfg,
                                        std::size_t points = 2001);

}  // namespace arago
