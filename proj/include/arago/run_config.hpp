#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "arago/decoherent.hpp"
#include "arago/detector.hpp"
#include "arago/physical_config.hpp"
#include "arago/profile.hpp"

namespace arago {

struct GridSpec {
  bool automatic = true;
  double lo = 0;  // [m]
  double hi = 0;  // [m]
  std::size_t points = 2001;
};

// Everything a CLI run needs, parsed from a key = value config file.
// Dimensional quantities require explicit unit suffixes; unknown keys are
// rejected with their line number.
struct RunConfig {
  PhysicalConfig physical;
  CoherenceModel coherence;
  bool has_coherence = false;  // any of ell / ell0 / lambda_rate present
  DetectorSpec detector;
  GridSpec grid;
  Normalization norm = Normalization::peak_one;
  std::string out;  // default output path; empty = write to stdout
};

RunConfig load_config(const std::string& path);

// "MIN:MAX:N" with unit suffixes on MIN and MAX, or "auto".
GridSpec parse_grid_spec(std::string_view text);

}  // namespace arago
