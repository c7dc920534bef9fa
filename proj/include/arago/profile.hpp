#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace arago {

enum class Normalization { raw, peak_one, unit_area };

const char* normalization_name(Normalization n);
Normalization normalization_from_name(std::string_view name);

// A sampled transverse intensity profile. `xs` is strictly increasing [m];
// values carry arbitrary units until normalized.
struct IntensityProfile {
  std::vector<double> xs;
  std::vector<double> values;
  Normalization norm = Normalization::raw;
  std::string meta;
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

// Throws std::invalid_argument on an empty or non-increasing grid.
void validate_grid(const std::vector<double>& xs);

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

// peak_one divides by the maximum (which then equals 1 exactly); unit_area
// divides by the trapezoid integral.
void apply_normalization(IntensityProfile& p, Normalization norm);

}  // namespace arago
