#include "arago/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arago {

bool is_uniform_grid(const std::vector<double>& xs, double rel_tol) {
  if (xs.size() < 2) return false;
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(h > 0)) return false;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (std::abs((xs[i + 1] - xs[i]) - h) > rel_tol * h) return false;
  }
  return true;
}

PchipInterpolant::PchipInterpolant(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) {
    throw std::invalid_argument("PchipInterpolant: need matching grids, >= 2 points");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(xs_[i] < xs_[i + 1])) {
      throw std::invalid_argument("PchipInterpolant: grid not strictly increasing");
    }
  }
  slopes_.assign(n, 0.0);
  std::vector<double> d(n - 1), h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    d[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = d[0];
    return;
  }
  // Fritsch-Carlson: weighted harmonic mean at interior nodes, zero across
  // sign changes; this keeps the interpolant monotone on monotone data.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      slopes_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) {
      m = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(m) > 3.0 * std::abs(d0)) {
      m = 3.0 * d0;
    }
    return m;
  };
  slopes_[0] = end_slope(h[0], h[1], d[0], d[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

double PchipInterpolant::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const double h = xs_[i + 1] - xs_[i];
  const double s = (x - xs_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] +
         h11 * h * slopes_[i + 1];
}

}  // namespace arago
