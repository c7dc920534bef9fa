#pragma once

#include <iosfwd>
#include <string>

#include "arago/dataset.hpp"
#include "arago/profile.hpp"

namespace arago {

// Shortest decimal representation that round-trips the double exactly.
// Keeps repeated runs byte-identical across platforms.
std::string format_double(double v);

// Profile CSV: header "x_um,intensity", abscissae in micrometers.
void write_profile_csv(std::ostream& os, const IntensityProfile& p);
IntensityProfile read_profile_csv(const std::string& path);

// Dataset CSV: header "x_um,rate,rate_err" (rate_err column optional).
// Lines starting with '#' are skipped on input.
void write_dataset_csv(std::ostream& os, const DataSet& d);
DataSet read_dataset_csv(const std::string& path);

}  // namespace arago
