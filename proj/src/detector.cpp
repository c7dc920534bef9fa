#include "arago/detector.hpp"

#include <cmath>
#include <stdexcept>

#include "arago/csv.hpp"
#include "arago/numeric.hpp"

namespace arago {

IntensityProfile convolve_detector(const IntensityProfile& profile,
                                   const DetectorSpec& det) {
  validate_grid(profile.xs);
  if (det.sigma_d < 0 || !std::isfinite(det.sigma_d)) {
    throw std::invalid_argument("convolve_detector: sigma_d must be >= 0");
  }
  if (det.sigma_d == 0) return profile;  // ideal point detector

  if (!is_uniform_grid(profile.xs)) {
    throw std::invalid_argument(
        "convolve_detector: grid must be uniform (resample first)");
  }
  const double h = (profile.xs.back() - profile.xs.front()) /
                   static_cast<double>(profile.xs.size() - 1);
  if (h > det.sigma_d / 4.0) {
    throw std::invalid_argument(
        "convolve_detector: grid spacing " + format_double(h) +
        " under-resolves the kernel (needs <= sigma_d/4 = " +
        format_double(det.sigma_d / 4.0) + ")");
  }

  // Kernel support truncated at 8 sigma (relative weight < 2e-14).
  const std::size_t n = profile.values.size();
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(8.0 * det.sigma_d / h));
  std::vector<double> kernel(static_cast<std::size_t>(reach) + 1);
  const double inv2s2 = 1.0 / (2.0 * det.sigma_d * det.sigma_d);
  for (std::ptrdiff_t j = 0; j <= reach; ++j) {
    const double d = static_cast<double>(j) * h;
    kernel[static_cast<std::size_t>(j)] = std::exp(-d * d * inv2s2);
  }

  IntensityProfile out;
  out.xs = profile.xs;
  out.values.assign(n, 0.0);
  out.norm = Normalization::raw;
  out.meta = profile.meta + " | convolved sigma_d=" + format_double(det.sigma_d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(i) - reach);
    const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1,
                                             static_cast<std::ptrdiff_t>(i) + reach);
    double acc = 0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const auto k = static_cast<std::size_t>(
          std::abs(j - static_cast<std::ptrdiff_t>(i)));
      // trapezoid weights: half weight on the profile's end samples
      double wgt = (j == 0 || j == static_cast<std::ptrdiff_t>(n) - 1) ? 0.5 : 1.0;
      acc += wgt * profile.values[static_cast<std::size_t>(j)] * kernel[k];
    }
    out.values[i] = acc * h;
  }
  return out;
}

}  // namespace arago
