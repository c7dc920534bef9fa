#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "arago/csv.hpp"
#include "arago/run_config.hpp"
#include "arago/units.hpp"
#include "test_support.hpp"

using namespace arago;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/arago_test_" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("quantity parsing") {
  CHECK(parse_quantity("50um", Unit::length) == doctest::Approx(5.0e-5).epsilon(1e-15));
  CHECK(parse_quantity("20ms", Unit::time) == doctest::Approx(2.0e-2).epsilon(1e-15));
  CHECK(parse_quantity("3.34e-27kg", Unit::mass) == doctest::Approx(3.34e-27).epsilon(1e-15));
  CHECK(parse_quantity("1.5 mm", Unit::length) == doctest::Approx(1.5e-3).epsilon(1e-15));
  CHECK(parse_quantity("2u", Unit::mass) == doctest::Approx(2.0 * 1.66053906660e-27).epsilon(1e-15));
  CHECK(parse_quantity("1.054571817e-34Js", Unit::action) == kHbar);
  CHECK(parse_quantity("4.5e12/m2s", Unit::decoherence_rate) == 4.5e12);

  CHECK_THROWS_AS(parse_quantity("50", Unit::length), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("50qm", Unit::length), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("50um", Unit::time), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("", Unit::mass), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("x3kg", Unit::mass), std::invalid_argument);
}

TEST_CASE("shortest round-trip decimal formatting") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  for (int i = 0; i < 2000; ++i) {
    const double v = mant(rng) * std::pow(10.0, expo(rng));
    const std::string s = format_double(v);
    double back = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc());
    REQUIRE(p == s.data() + s.size());
    CHECK(back == v);
  }
  CHECK(format_double(29800.0) == "29800");
}

TEST_CASE("config loading") {
  SUBCASE("bundled scan config reproduces the intended inputs") {
    const RunConfig rc = load_config(ARAGO_DATA_DIR "/scan.cfg");
    CHECK(rc.physical.mass == doctest::Approx(3.34e-27).epsilon(1e-15));
    CHECK(rc.physical.sigma0 == doctest::Approx(51e-6).epsilon(1e-15));
    CHECK(rc.physical.beta == doctest::Approx(60e-6).epsilon(1e-15));
    CHECK(rc.physical.t == doctest::Approx(1.4e-3).epsilon(1e-15));
    CHECK(rc.physical.tau == doctest::Approx(0.606e-3).epsilon(1e-15));
    CHECK(rc.physical.hbar == kHbar);
    CHECK(rc.has_coherence);
    CHECK(coherence_length(rc.coherence, rc.physical.tau) ==
          doctest::Approx(0.3369e-6).epsilon(1e-15));
    CHECK(rc.detector.sigma_d == doctest::Approx(3.96e-6).epsilon(1e-15));
    CHECK(!rc.grid.automatic);
    CHECK(rc.grid.points == 601);
    CHECK(rc.norm == Normalization::peak_one);
  }

  SUBCASE("missing required key is named") {
    const std::string path = write_temp(
        "missing_mass.cfg", "sigma0 = 50um\nbeta = 60um\nt = 1ms\ntau = 2ms\n");
    try {
      load_config(path);
      FAIL("expected a missing-key error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("mass") != std::string::npos);
    }
  }

  SUBCASE("unknown key is rejected with its line") {
    const std::string path = write_temp(
        "unknown.cfg",
        "mass = 3.34e-27kg\nsigma0 = 50um\nbeta = 60um\nt = 1ms\ntau = 2ms\n"
        "wavelength = 3um\n");
    try {
      load_config(path);
      FAIL("expected an unknown-key error");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("wavelength") != std::string::npos);
      CHECK(msg.find(":6") != std::string::npos);
    }
  }

  SUBCASE("bad unit suffix is rejected with key and line") {
    const std::string path = write_temp(
        "badunit.cfg",
        "mass = 3.34e-27kg\nsigma0 = 50\nbeta = 60um\nt = 1ms\ntau = 2ms\n");
    try {
      load_config(path);
      FAIL("expected a unit error");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("sigma0") != std::string::npos);
      CHECK(msg.find(":2") != std::string::npos);
    }
  }

  SUBCASE("nonpositive value is rejected") {
    const std::string path = write_temp(
        "nonpos.cfg",
        "mass = 3.34e-27kg\nsigma0 = -2um\nbeta = 60um\nt = 1ms\ntau = 2ms\n");
    CHECK_THROWS(load_config(path));
  }

  SUBCASE("grid specification") {
    const GridSpec g = parse_grid_spec("-200um:150um:401");
    CHECK(!g.automatic);
    CHECK(g.lo == doctest::Approx(-2e-4).epsilon(1e-15));
    CHECK(g.hi == doctest::Approx(1.5e-4).epsilon(1e-15));
    CHECK(g.points == 401);
    CHECK(parse_grid_spec("auto").automatic);
    CHECK_THROWS_AS(parse_grid_spec("1um:2um"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("2um:1um:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("1um:2um:1"), std::invalid_argument);
  }
}

TEST_CASE("dataset CSV") {
  SUBCASE("parsing with errors column") {
    const std::string path = write_temp("data.csv",
                                        "x_um,rate,rate_err\n"
                                        "0.0,29800,170\n"
                                        "-5.0,29950,171\n"
                                        "5.0,29700,169\n");
    const DataSet d = read_dataset_csv(path);
    REQUIRE(d.xs.size() == 3);
    // sorted on load
    CHECK(d.xs[0] == doctest::Approx(-5e-6).epsilon(1e-15));
    CHECK(d.xs[1] == 0.0);
    CHECK(d.counts[1] == 29800.0);
    CHECK(d.errors[1] == 170.0);
  }

  SUBCASE("header only is an empty dataset") {
    const std::string path = write_temp("empty.csv", "x_um,rate\n");
    try {
      read_dataset_csv(path);
      FAIL("expected an empty-dataset error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("empty dataset") != std::string::npos);
    }
  }

  SUBCASE("malformed row reports its line") {
    const std::string path = write_temp("bad.csv",
                                        "x_um,rate\n"
                                        "0.0,100\n"
                                        "5.0,oops\n");
    try {
      read_dataset_csv(path);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  SUBCASE("duplicate abscissae are rejected") {
    const std::string path = write_temp("dup.csv",
                                        "x_um,rate\n0,1\n0,2\n");
    CHECK_THROWS(read_dataset_csv(path));
  }

  SUBCASE("write/read round trip is exact") {
    DataSet d;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
      d.xs.push_back((i - 20) * 7.3e-6 + uni(rng) * 1e-9);
      d.counts.push_back(29000.0 + 2000.0 * uni(rng));
      d.errors.push_back(100.0 + uni(rng));
    }
    std::ostringstream os;
    write_dataset_csv(os, d);
    const std::string path = write_temp("round.csv", os.str());
    const DataSet back = read_dataset_csv(path);
    for (std::size_t i = 0; i < d.xs.size(); ++i) {
      // abscissae pass through the meter <-> micrometer scaling
      CHECK(back.xs[i] == doctest::Approx(d.xs[i]).epsilon(1e-12));
      CHECK(back.counts[i] == d.counts[i]);
      CHECK(back.errors[i] == d.errors[i]);
    }
  }

  SUBCASE("comment lines are skipped") {
    const DataSet d = read_dataset_csv(ARAGO_DATA_DIR "/synthetic_rates.csv");
    CHECK(d.xs.size() == 121);
    CHECK(d.has_errors());
  }
}

TEST_CASE("profile CSV round trip") {
  IntensityProfile p;
  p.xs = linspace(-1e-4, 1e-4, 64);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < p.xs.size(); ++i) p.values.push_back(uni(rng));

  std::ostringstream os;
  write_profile_csv(os, p);
  const std::string path = write_temp("profile.csv", os.str());
  const IntensityProfile back = read_profile_csv(path);
  REQUIRE(back.xs.size() == p.xs.size());
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    // x is stored in micrometers; the scale factor costs one rounding
    CHECK(back.xs[i] == doctest::Approx(p.xs[i]).epsilon(1e-14));
    CHECK(back.values[i] == p.values[i]);
  }

  // emitting twice gives identical bytes
  std::ostringstream os2;
  write_profile_csv(os2, p);
  CHECK(os.str() == os2.str());
}

TEST_CASE("residual traces are readable as profiles") {
  const std::string path = write_temp("resid.csv",
                                      "x_um,residual\n-5,-0.25\n0,1.5\n5,0.75\n");
  const IntensityProfile p = read_profile_csv(path);
  REQUIRE(p.xs.size() == 3);
  CHECK(p.values[0] == -0.25);
  CHECK(p.values[1] == 1.5);
}
