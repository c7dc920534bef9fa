#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string kCli = ARAGO_CLI_PATH;
const std::string kData = ARAGO_DATA_DIR;

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run(kCli + " >/dev/null 2>&1") == 2);
  CHECK(run(kCli + " frobnicate >/dev/null 2>&1") == 2);
  CHECK(run(kCli + " coherent --nonsense >/dev/null 2>&1") == 2);
  CHECK(run(kCli + " coherent >/dev/null 2>&1") == 2);  // missing --config
  CHECK(run(kCli + " oracle nosuch --config " + kData +
            "/long_coherent.cfg >/dev/null 2>&1") == 2);
  CHECK(run(kCli + " coherent --config " + kData +
            "/long_coherent.cfg --grid 2um:1um:5 >/dev/null 2>&1") == 2);
  CHECK(run(kCli + " coherent --config " + kData +
            "/long_coherent.cfg --norm loudness >/dev/null 2>&1") == 2);
}

TEST_CASE("computation errors exit with 1") {
  CHECK(run(kCli + " coherent --config /nonexistent.cfg >/dev/null 2>&1") == 1);
  CHECK(run(kCli + " fit --config " + kData +
            "/long_coherent.cfg --data /nonexistent.csv >/dev/null 2>&1") == 1);
  // long_coherent.cfg carries no coherence model
  CHECK(run(kCli + " decoherent --config " + kData +
            "/long_coherent.cfg >/dev/null 2>&1") == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run(kCli + " --help >/dev/null 2>&1") == 0);
}

TEST_CASE("profile output lands on the requested grid") {
  const std::string out = "/tmp/arago_cli_profile.csv";
  CHECK(run(kCli + " coherent --config " + kData +
            "/long_coherent.cfg --grid -100um:100um:11 --out " + out +
            " >/dev/null 2>&1") == 0);
  const std::string body = slurp(out);
  CHECK(body.rfind("x_um,intensity\n", 0) == 0);
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> xs;
  while (std::getline(lines, line)) {
    xs.push_back(std::strtod(line.c_str(), nullptr));
  }
  REQUIRE(xs.size() == 11);
  CHECK(xs.front() == doctest::Approx(-100.0).epsilon(1e-12));
  CHECK(xs.back() == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(xs[5] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("coherent profile keeps its central spot") {
  const std::string out = "/tmp/arago_cli_spot.csv";
  CHECK(run(kCli + " coherent --config " + kData +
            "/long_coherent.cfg --grid -50um:50um:101 --out " + out +
            " >/dev/null 2>&1") == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> values;
  while (std::getline(in, line)) {
    const std::size_t comma = line.find(',');
    values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  REQUIRE(values.size() == 101);
  CHECK(values[50] > values[49]);
  CHECK(values[50] > values[51]);
}

TEST_CASE("gouy table lists the expected rows") {
  const std::string out = "/tmp/arago_cli_gouy.csv";
  CHECK(run(kCli + " gouy --config " + kData + "/scan.cfg > " + out +
            " 2>/dev/null") == 0);
  const std::string body = slurp(out);
  CHECK(body.rfind("quantity,rad\n", 0) == 0);
  CHECK(body.find("mu_free,") != std::string::npos);
  CHECK(body.find("mu_slit,") != std::string::npos);
  CHECK(body.find("mu_coherent,") != std::string::npos);
  CHECK(body.find("mu_partial,") != std::string::npos);
  CHECK(body.find("abs_mu_partial,0.0006073824070677346") != std::string::npos);
}

TEST_CASE("oracle subcommand reports tight deviations") {
  const std::string out = "/tmp/arago_cli_oracle.csv";
  CHECK(run(kCli + " oracle decoherent --config " + kData + "/scan.cfg > " +
            out + " 2>/dev/null") == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "check,value");
  std::getline(in, line);
  const std::size_t comma = line.find(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::strtod(line.c_str() + comma + 1, nullptr) < 1e-4);

  // randomized trials, seeded
  const std::string out2 = "/tmp/arago_cli_oracle2.csv";
  CHECK(run(kCli + " oracle babinet --trials 2 --seed 7 --config " + kData +
            "/example.cfg > " + out2 + " 2>/dev/null") == 0);
  std::ifstream in2(out2);
  std::getline(in2, line);  // header
  int rows = 0;
  while (std::getline(in2, line)) {
    const std::size_t c = line.find(',');
    REQUIRE(c != std::string::npos);
    CHECK(std::strtod(line.c_str() + c + 1, nullptr) < 1e-6);
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string a = "/tmp/arago_cli_det_a.csv";
  const std::string b = "/tmp/arago_cli_det_b.csv";
  const std::string cmd = kCli + " decoherent --config " + kData +
                          "/long_partial.cfg --grid -150um:150um:301 --out ";
  CHECK(run(cmd + a + " >/dev/null 2>&1") == 0);
  CHECK(run(cmd + b + " >/dev/null 2>&1") == 0);
  const std::string body_a = slurp(a);
  CHECK(!body_a.empty());
  CHECK(body_a == slurp(b));
}
