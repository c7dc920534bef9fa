#pragma once

#include "arago/profile.hpp"

namespace arago {

struct DetectorSpec {
  double sigma_d = 0;  // detector aperture width [m]; 0 = ideal point detector
};

// Effective intensity seen by a Gaussian detector aperture: discrete
// convolution with the unnormalized kernel exp(-(x-x')^2 / (2 sigma_d^2))
// using trapezoid weights on a uniform grid. sigma_d = 0 returns the input
// unchanged. Requires a uniform grid with spacing <= sigma_d / 4.
IntensityProfile convolve_detector(const IntensityProfile& profile,
                                   const DetectorSpec& det);

}  // namespace arago
