#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arago/profile.hpp"

namespace arago {

struct PlotSeries {
  std::string label;
  IntensityProfile profile;
};

// Static vector-graphics rendering of one or more profiles: framed axes with
// tick labels (x in micrometers), one polyline per series, legend. Output is
// deterministic for identical inputs.
void write_profiles_svg(std::ostream& os, const std::vector<PlotSeries>& series);

}  // namespace arago
