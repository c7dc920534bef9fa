#pragma once

#include <vector>

#include "arago/beam.hpp"
#include "arago/profile.hpp"

namespace arago {

enum class CoherenceMode { direct_ell, evolved_ell };

// Transverse coherence model for the obstacle -> screen leg. direct_ell
// supplies the coherence length at the screen directly; evolved_ell derives
// it from the obstacle-plane value ell0 and the decoherence strength Lambda,
// ell(tau) = ell0 / sqrt(1 + (2 Lambda tau / 3) ell0^2).
struct CoherenceModel {
  CoherenceMode mode = CoherenceMode::direct_ell;
  double ell = 0;          // [m], direct_ell mode
  double ell0 = 0;         // [m], evolved_ell mode
  double lambda_rate = 0;  // [1/(m^2 s)], evolved_ell mode

  void validate() const;
};

double coherence_length(const CoherenceModel& model, double tau);

// Coefficients of the closed-form partially coherent intensity. eta,
// eta_prime, alpha and delta carry 1/m^2; C carries kg^2/m^4.
struct DecoherentParams {
  double eta = 0;
  double eta_prime = 0;
  double alpha = 0;
  double delta = 0;
  double C = 0;
  double ell = 0;  // coherence length the coefficients were built with [m]
};

DecoherentParams decoherent_params(const PhysicalConfig& cfg, double ell);

// Generalized Gouy phase of the partially coherent spot. Signed closed-form
// value (negative for positive parameters); -> 0 as ell -> 0 and -> the
// coherent Gouy difference as ell -> inf.
double gouy_partial(const PhysicalConfig& cfg, double ell);

// Closed-form partially coherent intensity (defined up to overall scale).
// include_gouy = false drops the Gouy phase from the interference cosine.
double decoherent_intensity(const PhysicalConfig& cfg, double ell, double x,
                            bool include_gouy = true);

IntensityProfile decoherent_profile(const PhysicalConfig& cfg, double ell,
                                    const std::vector<double>& grid,
                                    bool include_gouy, Normalization norm);

}  // namespace arago
