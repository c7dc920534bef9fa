#include "arago/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace arago {

namespace {

struct Suffix {
  const char* text;
  double factor;
};

// Longest suffix first where one is a tail of another ("kg" before "g",
// "ms" before "s").
constexpr std::array<Suffix, 3> kMass{{{"kg", 1.0}, {"u", 1.66053906660e-27}, {"g", 1e-3}}};
constexpr std::array<Suffix, 5> kLength{
    {{"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}, {"m", 1.0}}};
constexpr std::array<Suffix, 4> kTime{{{"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"s", 1.0}}};
constexpr std::array<Suffix, 1> kAction{{{"Js", 1.0}}};
constexpr std::array<Suffix, 1> kRate{{{"/m2s", 1.0}}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::mass: return "mass (kg, g, u)";
    case Unit::length: return "length (m, cm, mm, um, nm)";
    case Unit::time: return "time (s, ms, us, ns)";
    case Unit::action: return "action (Js)";
    case Unit::decoherence_rate: return "rate (/m2s)";
  }
  return "?";
}

template <std::size_t N>
bool try_parse(std::string_view text, const std::array<Suffix, N>& table,
               double& out) {
  for (const Suffix& s : table) {
    const std::string_view sfx(s.text);
    if (text.size() <= sfx.size()) continue;
    if (text.substr(text.size() - sfx.size()) != sfx) continue;
    const std::string_view num = trim(text.substr(0, text.size() - sfx.size()));
    double value = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size()) continue;
    out = value * s.factor;
    return true;
  }
  return false;
}

}  // namespace

double parse_quantity(std::string_view text, Unit unit) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty quantity");
  double out = 0;
  bool ok = false;
  switch (unit) {
    case Unit::mass: ok = try_parse(s, kMass, out); break;
    case Unit::length: ok = try_parse(s, kLength, out); break;
    case Unit::time: ok = try_parse(s, kTime, out); break;
    case Unit::action: ok = try_parse(s, kAction, out); break;
    case Unit::decoherence_rate: ok = try_parse(s, kRate, out); break;
  }
  if (!ok) {
    throw std::invalid_argument("'" + std::string(s) +
                                "' is not a valid quantity with a " +
                                unit_name(unit) + " suffix");
  }
  return out;
}

}  // namespace arago
