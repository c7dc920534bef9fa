#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arago/dataset.hpp"
#include "arago/detector.hpp"
#include "arago/physical_config.hpp"
#include "arago/profile.hpp"

namespace arago {

struct FitResult {
  double a = 0;  // offset [1/s]
  double b = 0;  // scale [1/s] applied to the peak-one model intensity
  double a_stderr = 0;
  double b_stderr = 0;
  double ell = 0;      // coherence length used/fitted [m]
  double sigma_d = 0;  // detector width used/fitted [m]
  bool ell_fitted = false;
  bool sigma_d_fitted = false;
  bool hit_bounds = false;  // optimizer ended on a parameter bound
  double residual_norm = 0;             // Euclidean norm of residuals [1/s]
  std::vector<double> residuals;        // data - (a + b model), counts space
  double chi2 = 0;                      // only meaningful when chi2_valid
  bool chi2_valid = false;
  std::size_t model_evals = 0;          // optimizer trace length
  std::string meta;
};

// Weighted linear least squares for counts ~ a + b * model, solved from the
// centered normal equations in closed form. Weights are 1/err^2 when the
// data carries error bars. The model profile must be sampled at the data
// abscissae. Throws std::invalid_argument on rank deficiency (constant
// model) or mismatched grids.
FitResult affine_fit(const IntensityProfile& model, const DataSet& data);

// Peak-one, detector-convolved model intensity at arbitrary abscissae. The
// profile is evaluated on an internal uniform grid extended 6 sigma_d past
// the requested range and interpolated with monotone cubics.
std::vector<double> model_shape(const PhysicalConfig& cfg, double ell,
                                double sigma_d, const std::vector<double>& xs);

struct ParamBounds {
  double lo = 0;
  double hi = 0;
};

struct NonlinearFitSpec {
  double ell = 0;      // fixed value, or starting region when free
  double sigma_d = 0;
  bool free_ell = false;
  bool free_sigma_d = false;
  ParamBounds ell_bounds;      // required when free_ell
  ParamBounds sigma_d_bounds;  // required when free_sigma_d
  int points_per_decade = 25;  // coarse log-grid density
  int simplex_max_iter = 200;
};

// Minimizes the affine-fit residual norm over the free parameters: coarse
// log-grid scan followed by Nelder-Mead refinement in log-parameter space,
// with (a, b) re-solved in closed form at every candidate. An optimizer that
// ends on a bound is reported through hit_bounds, never silently clipped.
// With no free parameters this reduces exactly to affine_fit at the fixed
// values.
FitResult nonlinear_fit(const PhysicalConfig& cfg, const DataSet& data,
                        const NonlinearFitSpec& spec);

}  // namespace arago
