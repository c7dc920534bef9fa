#include "arago/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arago {

void DataSet::validate() const {
  if (xs.empty()) throw std::invalid_argument("empty dataset");
  if (counts.size() != xs.size()) {
    throw std::invalid_argument("dataset: xs and counts differ in length");
  }
  if (!errors.empty() && errors.size() != xs.size()) {
    throw std::invalid_argument("dataset: errors length mismatch");
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) {
      throw std::invalid_argument("dataset: abscissae not strictly increasing at row " +
                                  std::to_string(i + 2));
    }
  }
  for (double e : errors) {
    if (!(e > 0) || !std::isfinite(e)) {
      throw std::invalid_argument("dataset: error bars must be positive");
    }
  }
  for (double v : counts) {
    if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite count");
  }
}

}  // namespace arago
