#include "arago/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arago {

const char* normalization_name(Normalization n) {
  switch (n) {
    case Normalization::raw: return "raw";
    case Normalization::peak_one: return "peak";
    case Normalization::unit_area: return "area";
  }
  return "?";
}

Normalization normalization_from_name(std::string_view name) {
  if (name == "raw") return Normalization::raw;
  if (name == "peak" || name == "peak_one") return Normalization::peak_one;
  if (name == "area" || name == "unit_area") return Normalization::unit_area;
  throw std::invalid_argument("unknown normalization '" + std::string(name) +
                              "' (expected raw, peak or area)");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> xs(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + h * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

void validate_grid(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("grid is empty");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) {
      throw std::invalid_argument("grid is not strictly increasing at index " +
                                  std::to_string(i + 1));
    }
  }
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("trapezoid: need matching grids with >= 2 points");
  }
  double acc = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    acc += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
  }
  return acc;
}

void apply_normalization(IntensityProfile& p, Normalization norm) {
  if (norm == Normalization::raw) {
    p.norm = norm;
    return;
  }
  double scale = 0;
  if (norm == Normalization::peak_one) {
    scale = *std::max_element(p.values.begin(), p.values.end());
  } else {
    scale = trapezoid(p.xs, p.values);
  }
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw std::invalid_argument("cannot normalize profile: scale is not positive");
  }
  for (double& v : p.values) v /= scale;
  p.norm = norm;
}

}  // namespace arago
