#pragma once

#include <vector>

namespace arago {

// Measured count rates across the screen. `errors` holds 1-sigma
// uncertainties when present, otherwise stays empty.
struct DataSet {
  std::vector<double> xs;      // [m], strictly increasing
  std::vector<double> counts;  // [1/s]
  std::vector<double> errors;  // [1/s], optional

  bool has_errors() const { return !errors.empty(); }
  void validate() const;
};

}  // namespace arago
