#include "arago/run_config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <stdexcept>

#include "arago/units.hpp"

namespace arago {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

GridSpec parse_grid_spec(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "auto") return GridSpec{};
  const std::size_t c1 = s.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw std::invalid_argument("grid must be 'auto' or MIN:MAX:N, got '" +
                                std::string(s) + "'");
  }
  GridSpec g;
  g.automatic = false;
  g.lo = parse_quantity(s.substr(0, c1), Unit::length);
  g.hi = parse_quantity(s.substr(c1 + 1, c2 - c1 - 1), Unit::length);
  const std::string_view n_text = trim(s.substr(c2 + 1));
  unsigned long long n = 0;
  const auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (ec != std::errc() || ptr != n_text.data() + n_text.size() || n < 2) {
    throw std::invalid_argument("grid point count must be an integer >= 2");
  }
  if (!(g.lo < g.hi)) throw std::invalid_argument("grid needs MIN < MAX");
  g.points = static_cast<std::size_t>(n);
  return g;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");

  std::map<std::string, std::pair<std::size_t, std::string>> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) fail(path, line_no, "expected key = value");
    const std::string key{trim(body.substr(0, eq))};
    const std::string value{trim(body.substr(eq + 1))};
    if (key.empty()) fail(path, line_no, "empty key");
    if (value.empty()) fail(path, line_no, "empty value for key '" + key + "'");
    if (kv.count(key)) fail(path, line_no, "duplicate key '" + key + "'");
    kv[key] = {line_no, value};
  }

  RunConfig rc;
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::pair<std::size_t, std::string>{0, {}};
    auto res = it->second;
    kv.erase(it);
    return res;
  };
  auto quantity = [&](const char* key, Unit unit, bool required,
                      double fallback) {
    const auto [ln, value] = take(key);
    if (value.empty()) {
      if (required) {
        throw std::runtime_error(path + ": missing required key '" +
                                 std::string(key) + "'");
      }
      return fallback;
    }
    try {
      return parse_quantity(value, unit);
    } catch (const std::exception& e) {
      fail(path, ln, std::string("key '") + key + "': " + e.what());
    }
  };
  rc.physical.mass = quantity("mass", Unit::mass, true, 0);
  rc.physical.sigma0 = quantity("sigma0", Unit::length, true, 0);
  rc.physical.beta = quantity("beta", Unit::length, true, 0);
  rc.physical.t = quantity("t", Unit::time, true, 0);
  rc.physical.tau = quantity("tau", Unit::time, true, 0);
  rc.physical.hbar = quantity("hbar", Unit::action, false, kHbar);
  rc.physical.validate();

  const auto [ell_ln, ell_text] = take("ell");
  const auto [ell0_ln, ell0_text] = take("ell0");
  const auto [rate_ln, rate_text] = take("lambda_rate");
  const auto [mode_ln, mode_text] = take("mode");
  if (!ell_text.empty() && !ell0_text.empty()) {
    fail(path, ell0_ln, "give either 'ell' (direct) or 'ell0' + 'lambda_rate' (evolved), not both");
  }
  if (!ell_text.empty()) {
    rc.coherence.mode = CoherenceMode::direct_ell;
    try {
      rc.coherence.ell = parse_quantity(ell_text, Unit::length);
    } catch (const std::exception& e) {
      fail(path, ell_ln, std::string("key 'ell': ") + e.what());
    }
    rc.has_coherence = true;
  } else if (!ell0_text.empty()) {
    rc.coherence.mode = CoherenceMode::evolved_ell;
    try {
      rc.coherence.ell0 = parse_quantity(ell0_text, Unit::length);
    } catch (const std::exception& e) {
      fail(path, ell0_ln, std::string("key 'ell0': ") + e.what());
    }
    if (rate_text.empty()) {
      throw std::runtime_error(path + ": 'ell0' needs 'lambda_rate'");
    }
    try {
      rc.coherence.lambda_rate = parse_quantity(rate_text, Unit::decoherence_rate);
    } catch (const std::exception& e) {
      fail(path, rate_ln, std::string("key 'lambda_rate': ") + e.what());
    }
    rc.has_coherence = true;
  } else if (!rate_text.empty()) {
    fail(path, rate_ln, "'lambda_rate' needs 'ell0'");
  }
  if (!mode_text.empty()) {
    const bool evolved = mode_text == "evolved_ell";
    if (!evolved && mode_text != "direct_ell") {
      fail(path, mode_ln, "mode must be direct_ell or evolved_ell");
    }
    if (evolved != (rc.coherence.mode == CoherenceMode::evolved_ell)) {
      fail(path, mode_ln, "mode does not match the supplied coherence keys");
    }
  }
  if (rc.has_coherence) rc.coherence.validate();

  const auto [sd_ln, sd_text] = take("sigma_d");
  if (!sd_text.empty()) {
    try {
      rc.detector.sigma_d = parse_quantity(sd_text, Unit::length);
    } catch (const std::exception& e) {
      fail(path, sd_ln, std::string("key 'sigma_d': ") + e.what());
    }
    if (rc.detector.sigma_d < 0) fail(path, sd_ln, "sigma_d must be >= 0");
  }

  const auto [grid_ln, grid_text] = take("grid");
  if (!grid_text.empty()) {
    try {
      rc.grid = parse_grid_spec(grid_text);
    } catch (const std::exception& e) {
      fail(path, grid_ln, std::string("key 'grid': ") + e.what());
    }
  }

  const auto [norm_ln, norm_text] = take("normalization");
  if (!norm_text.empty()) {
    try {
      rc.norm = normalization_from_name(norm_text);
    } catch (const std::exception& e) {
      fail(path, norm_ln, e.what());
    }
  }

  rc.out = take("out").second;

  if (!kv.empty()) {
    const auto& [key, pos] = *kv.begin();
    fail(path, pos.first, "unknown key '" + key + "'");
  }
  return rc;
}

}  // namespace arago
