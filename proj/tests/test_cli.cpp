#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "casimir/cli.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

const std::string kReference =
    "# reference plates\n"
    "L = 100nm\n"
    "lambda_C = 1.2um\n"
    "lambda_P = 137nm\n"
    "a1a2 = 200nm2\n"
    "Ly = 24um\n"
    "material = plasma\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_text(const std::string& sub, const std::string& text, RunOptions options = {}) {
  std::ostringstream out, err;
  const int code = run(sub, parse_config(text), options, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reference configuration") {
  const RunConfig c = parse_config(kReference);
  CHECK(c.geometry.L == doctest::Approx(100e-9).epsilon(1e-15));
  CHECK(c.geometry.lambdaC == doctest::Approx(1.2e-6).epsilon(1e-15));
  CHECK(c.geometry.Ly == doctest::Approx(24e-6).epsilon(1e-15));
  CHECK(c.geometry.Lx == c.geometry.Ly);
  CHECK(c.geometry.amplitude_product() == doctest::Approx(200e-18).epsilon(1e-14));
  CHECK(c.material.kind == MaterialKind::PlasmaModel);
  CHECK(c.material.lambdaP == doctest::Approx(137e-9).epsilon(1e-15));
  CHECK(c.method == response::Method::Scattering);
  CHECK(c.output == OutputFormat::Csv);
  CHECK(c.output_path == "-");
  CHECK(c.geometry.b == 0.0);
  CHECK(c.geometry.theta == 0.0);
}

TEST_CASE("unit parsing") {
  CHECK(parse_length("1.2um") == doctest::Approx(1.2e-6).epsilon(1e-15));
  CHECK(parse_length("1.2 µm") == doctest::Approx(1.2e-6).epsilon(1e-15));
  CHECK(parse_length("3mm") == doctest::Approx(3e-3).epsilon(1e-15));
  CHECK(parse_length("2e-7") == 2e-7);
  CHECK(parse_area("200nm2") == doctest::Approx(2e-16).epsilon(1e-15));
  CHECK(parse_angle("1deg") == doctest::Approx(kPi / 180).epsilon(1e-15));
  CHECK(parse_angle("0.02rad") == 0.02);
  CHECK(parse_wavenumber("2.6/um") == doctest::Approx(2.6e6).epsilon(1e-15));
  CHECK_THROWS(parse_length("5furlong"));
  CHECK_THROWS(parse_angle("0.02"));
  CHECK_THROWS(parse_length("um"));
}

TEST_CASE("perfect mirrors reject a plasma wavelength") {
  const std::string text = "L = 1um\nLy = 24um\nlambda_C = 2.4um\na1a2 = 200nm2\nmaterial = perfect\nlambda_P = 137nm\n";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("lambda_P meaningless for perfect mirrors") != std::string::npos);
    CHECK(e.key() == "lambda_P");
    CHECK(e.line() == 6);
  }
}

TEST_CASE("empty document lists every missing key") {
  const std::string msg = error_of("");
  for (const char* key : {"L", "Ly", "lambda_C", "material", "a1a2"}) {
    CHECK_MESSAGE(msg.find(key) != std::string::npos, key);
  }
}

TEST_CASE("errors name the key and the line") {
  try {
    parse_config(kReference + "gap = 3nm\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "gap");
    CHECK(e.line() == 8);
  }
  try {
    parse_config(kReference + "theta = 0.1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "theta");
    CHECK(e.line() == 8);
  }
  CHECK(error_of(kReference + "L = 1um\n").find("duplicate") != std::string::npos);
  CHECK(error_of(kReference + "b = 3parsec\n").find("'b'") != std::string::npos);
  CHECK(error_of(kReference + "a1 = 10nm\na2 = 10nm\n").find("not both") != std::string::npos);
  CHECK(error_of(kReference + "method = drude\n").find("method") != std::string::npos);
  CHECK(error_of(kReference + "output = xml\n").find("output") != std::string::npos);
  CHECK_FALSE(error_of("L = -1um\nLy = 24um\nlambda_C = 2.4um\na1a2 = 200nm2\nmaterial = perfect\n").empty());
}

TEST_CASE("separate amplitudes and angles") {
  const RunConfig c =
      parse_config("L = 1um\nLy = 24um\nlambda_C = 2.4um\na1 = 10nm\na2 = 20nm\nmaterial = perfect\n"
                   "theta = 0.1deg  # small tilt\nb = 0.3um\nmethod = pfa\n");
  CHECK(c.geometry.a1 == doctest::Approx(10e-9).epsilon(1e-15));
  CHECK(c.geometry.a2 == doctest::Approx(20e-9).epsilon(1e-15));
  CHECK(c.geometry.theta == doctest::Approx(0.1 * kPi / 180).epsilon(1e-15));
  CHECK(c.method == response::Method::PFA);
}

TEST_CASE("number formatting round-trips") {
  for (const double v : {5.161e-7, 1.0 / 3.0, -2.2826490333837791e-07, 0.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("CSV quoting") {
  std::ostringstream os;
  write_csv(os, {{"a", "b"}, {{"1", "x,y"}, {"2", "say \"hi\""}}});
  CHECK(os.str() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
}

TEST_CASE("torque-max reproduces the headline number") {
  const Run r = run_text("torque-max", kReference);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header.rfind("method,tau_max_N_per_m,", 0) == 0);
  const auto first = row.find(',');
  const double tau = std::stod(row.substr(first + 1, row.find(',', first + 1) - first - 1));
  CHECK(tau == doctest::Approx(5.2e-7).epsilon(0.05));
}

TEST_CASE("landscape grid output") {
  RunOptions o;
  o.b_steps = 9;
  o.theta_steps = 13;
  const Run r = run_text("landscape", kReference, o);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "b_m,theta_rad,delta_e_J_per_m2");
  int rows = 0;
  double best = 1.0;
  std::string best_bt;
  while (std::getline(in, line)) {
    ++rows;
    const double e = std::stod(line.substr(line.rfind(',') + 1));
    if (e < best) {
      best = e;
      best_bt = line.substr(0, line.rfind(','));
    }
  }
  CHECK(rows == 9 * 13);
  CHECK(best_bt == "0,0");
}

TEST_CASE("determinism and the stamp flag") {
  const Run a = run_text("energy", kReference);
  const Run b = run_text("energy", kReference);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  RunOptions stamped;
  stamped.stamp = true;
  const Run s = run_text("energy", kReference, stamped);
  REQUIRE(s.out.rfind("# generated ", 0) == 0);
  CHECK(s.out.substr(s.out.find('\n') + 1) == a.out);
}

TEST_CASE("JSON output re-read as config reproduces the run bitwise") {
  const Run first = run_text("torque", kReference + "theta = 0.02deg\nb = 0.1um\noutput = json\n");
  REQUIRE(first.code == 0);
  const auto doc = nlohmann::json::parse(first.out);
  CHECK(doc.contains("config"));
  CHECK(doc["rows"].size() == 1);
  const Run second = run_text("torque", first.out);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
}

TEST_CASE("exit codes") {
  CHECK(run_text("optimize", kReference + "method = pfa\n").code == 2);
  CHECK(run_text("wobble", kReference).code == 2);
  const Run ok = run_text("epp", kReference);
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("L_m,e_pp_J_per_m2,d1_J_per_m3,d2_J_per_m4\n", 0) == 0);
}

TEST_CASE("config key set") {
  CHECK(config_keys().size() == 15);
  CHECK(subcommands().size() == 10);
}
