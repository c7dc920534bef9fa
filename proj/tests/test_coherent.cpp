#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <random>
#include <vector>

#include "arago/beam.hpp"
#include "arago/coherent.hpp"
#include "test_support.hpp"

using namespace arago;

namespace {

// magnitude scale of the three-term combination at x, for relative checks
double term_scale(const PhysicalConfig& cfg, double x) {
  const FreeBeamParams f = free_params(cfg, cfg.t + cfg.tau);
  const SlitBeamParams s = slit_params(cfg);
  const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  return inv_sqrt_pi / f.b * std::exp(-x * x / (f.b * f.b)) +
         inv_sqrt_pi / s.B * std::exp(-x * x / (s.B * s.B)) +
         2.0 * inv_sqrt_pi / std::sqrt(f.b * s.B) *
             std::exp(-(0.5 / (f.b * f.b) + 0.5 / (s.B * s.B)) * x * x);
}

}  // namespace

TEST_CASE("closed form equals the amplitude-level Babinet combination") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PhysicalConfig cfg = testutil::random_near_deuterium(rng);
    const FreeBeamParams f = free_params(cfg, cfg.t + cfg.tau);
    const SlitBeamParams s = slit_params(cfg);
    const double half = 5.0 * std::max(f.b, s.B);
    for (double x : linspace(-half, half, 21)) {
      const double closed = coherent_intensity(cfg, x, true);
      const double amp =
          std::norm(psi_free(cfg, x, cfg.t + cfg.tau) - psi_slit(cfg, x));
      // The amplitude route reduces the two kinetic phases mod 2 pi
      // independently, so agreement degrades as eps * |phase| once the
      // quadratic phases grow past ~1e3 rad at extreme parameter corners.
      const double kinetic = 0.5 * cfg.mass / cfg.hbar * x * x *
                             (1.0 / s.R + 1.0 / f.r);
      const double tol = (1e-12 + 32.0 * 2.22e-16 * kinetic) * term_scale(cfg, x);
      CHECK(std::abs(closed - amp) <= tol);
      ++checked;
    }
  }
  CHECK(checked == 2100);
}

TEST_CASE("deuterium point check against amplitudes") {
  const PhysicalConfig cfg = testutil::deuterium_long();
  for (double x : {0.0, 13.7e-6, 55e-6, -120e-6}) {
    const double amp =
        std::norm(psi_free(cfg, x, cfg.t + cfg.tau) - psi_slit(cfg, x));
    CHECK(std::abs(coherent_intensity(cfg, x, true) - amp) <=
          1e-12 * term_scale(cfg, x));
  }
}

TEST_CASE("Gouy difference equals the slit/free phase subtraction") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const PhysicalConfig cfg = testutil::random_wide(rng);
    const double mu = coherent_gouy_difference(cfg);
    const double sub =
        slit_params(cfg).mu - free_params(cfg, cfg.t + cfg.tau).mu;
    CHECK(std::abs(mu - sub) < 1e-12);
    CHECK(mu < 0.0);
  }

  SUBCASE("vanishing flight time after the obstacle") {
    PhysicalConfig cfg = testutil::deuterium_long();
    cfg.tau = 1e-10;
    CHECK(std::abs(coherent_gouy_difference(cfg)) < 1e-8);
  }

  SUBCASE("open slit") {
    PhysicalConfig cfg = testutil::deuterium_long();
    cfg.beta = cfg.sigma0 * 1e6;
    CHECK(std::abs(coherent_gouy_difference(cfg)) < 1e-9);
  }
}

TEST_CASE("Babinet null for an effectively open slit") {
  PhysicalConfig cfg = testutil::deuterium_long();
  cfg.beta = cfg.sigma0 * 1e6;
  const FreeBeamParams f = free_params(cfg, cfg.t + cfg.tau);
  const double free_peak = 1.0 / (std::sqrt(M_PI) * f.b);
  for (double x : linspace(-5.0 * f.b, 5.0 * f.b, 401)) {
    CHECK(coherent_intensity(cfg, x, true) / free_peak < 1e-9);
  }
}

TEST_CASE("profile evenness and normalization") {
  const PhysicalConfig cfg = testutil::deuterium_long();
  const std::vector<double> grid = default_screen_grid(cfg, 801);

  IntensityProfile peak = coherent_profile(cfg, grid, true, Normalization::peak_one);
  double maxv = 0;
  for (double v : peak.values) maxv = std::max(maxv, v);
  CHECK(maxv == 1.0);

  // even in x
  const std::size_t n = grid.size();
  double sup = 0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    sup = std::max(sup, std::abs(peak.values[i] - peak.values[n - 1 - i]));
  }
  CHECK(sup < 1e-12);

  IntensityProfile area = coherent_profile(cfg, grid, true, Normalization::unit_area);
  CHECK(trapezoid(area.xs, area.values) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(coherent_profile(cfg, {}, true, Normalization::raw),
                  std::invalid_argument);
  CHECK_THROWS_AS(coherent_profile(cfg, {1e-6, 1e-6}, true, Normalization::raw),
                  std::invalid_argument);
}

TEST_CASE("Gouy phase produces the central peak") {
  const PhysicalConfig cfg = testutil::deuterium_long();

  // 1 um spacing around the axis
  const double h = 1e-6;
  const double with_gouy0 = coherent_intensity(cfg, 0.0, true);
  const double with_gouy1 = coherent_intensity(cfg, h, true);
  const double no_gouy0 = coherent_intensity(cfg, 0.0, false);
  CHECK(with_gouy0 > with_gouy1);
  CHECK(with_gouy0 > coherent_intensity(cfg, -h, true));

  // the phase visibly changes the axial value
  CHECK(std::abs(with_gouy0 - no_gouy0) > 0.1 * no_gouy0);
}
