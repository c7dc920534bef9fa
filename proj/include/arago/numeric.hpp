#pragma once

#include <vector>

namespace arago {

bool is_uniform_grid(const std::vector<double>& xs, double rel_tol = 1e-9);

// Monotone (Fritsch-Carlson) cubic interpolation on a strictly increasing
// grid. Queries outside the grid clamp to the end values.
class PchipInterpolant {
 public:
  PchipInterpolant(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;

 private:
  std::vector<double> xs_, ys_, slopes_;
};

}  // namespace arago
