#pragma once

#include <string_view>

namespace arago {

enum class Unit { mass, length, time, action, decoherence_rate };

// Parses a number with a mandatory unit suffix, e.g. "50um", "1.4ms",
// "3.34e-27kg", "1.2e9/m2s". Accepted suffixes:
//   mass:   kg, g, u (atomic mass unit)
//   length: m, cm, mm, um, nm
//   time:   s, ms, us, ns
//   action: Js
//   decoherence_rate: /m2s
// Throws std::invalid_argument describing what is wrong (missing suffix,
// unknown suffix, malformed number).
double parse_quantity(std::string_view text, Unit unit);

}  // namespace arago
