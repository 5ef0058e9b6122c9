#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "casimir/model.hpp"

using namespace casimir;

namespace {

Geometry reference() {
  Geometry g;
  g.L = 100e-9;
  g.Ly = g.Lx = 24e-6;
  g.lambdaC = 1.2e-6;
  g.a1 = g.a2 = std::sqrt(200e-18);
  return g;
}

}  // namespace

TEST_CASE("reference configuration validates cleanly") {
  const auto r = validate(reference(), Material::plasma(137e-9));
  CHECK(r.ok());
  CHECK(r.warnings.empty());
}

TEST_CASE("zero amplitude is legal") {
  Geometry g = reference();
  g.a1 = 0.0;
  const auto r = validate(g, Material::perfect());
  CHECK(r.ok());
  CHECK(r.warnings.empty());
}

TEST_CASE("non-positive separation is an error") {
  Geometry g = reference();
  g.L = 0.0;
  const auto r = validate(g, Material::perfect());
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors.front() == "non-positive separation");
  CHECK_THROWS_AS(require_valid(g, Material::perfect()), std::invalid_argument);
}

TEST_CASE("validity breaches are warnings carrying the ratio") {
  Geometry g = reference();
  g.a1 = 0.5 * g.L;
  g.Ly = g.Lx = 2.0 * g.lambdaC;
  const auto r = validate(g, Material::perfect());
  CHECK(r.ok());
  REQUIRE(r.warnings.size() == 3);
  CHECK(r.warnings[0].find("0.5") != std::string::npos);
}

TEST_CASE("plasma material needs a positive plasma wavelength") {
  CHECK_FALSE(validate(reference(), Material::plasma(0.0)).ok());
  CHECK_THROWS_AS(Material::perfect().plasma_frequency(), std::invalid_argument);
}

TEST_CASE("corrugation wavenumber") {
  CHECK(corrugation_wavenumber(1.2e-6) == doctest::Approx(5.236e6).epsilon(1e-4));
  CHECK(corrugation_wavenumber(2.0 * kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(corrugation_wavenumber(2.4e-6) == doctest::Approx(2.618e6).epsilon(1e-4));
  CHECK_THROWS_AS(corrugation_wavenumber(0.0), std::invalid_argument);
  CHECK_THROWS_AS(corrugation_wavenumber(-1.0), std::invalid_argument);
}

TEST_CASE("sinc values") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(kPi)) < 1e-16);
  CHECK(sinc(4.4934) == doctest::Approx(-0.21723).epsilon(1e-4));
  CHECK(sinc(-2.5) == sinc(2.5));
}

TEST_CASE("sinc derivative values") {
  CHECK(sinc_derivative(0.0) == 0.0);
  // 30-digit evaluation of (x cos x - sin x) / x^2.
  CHECK(sinc_derivative(2.0816) == doctest::Approx(-0.4361818172036968).epsilon(1e-12));
  CHECK(sinc_derivative(kPi) == doctest::Approx(-1.0 / kPi).epsilon(1e-14));
  CHECK(sinc_derivative(-1.3) == -sinc_derivative(1.3));
}

TEST_CASE("series and direct branches agree across the switch") {
  for (const double x : {0.9e-4, 1.0e-4, 1.1e-4, 0.9e-3, 1.0e-3, 1.1e-3}) {
    const double direct = std::sin(x) / x;
    const double direct_d = (x * std::cos(x) - std::sin(x)) / (x * x);
    CHECK(std::abs(sinc(x) - direct) < 1e-12);
    CHECK(std::abs(sinc_derivative(x) - direct_d) < 1e-12);
  }
}

TEST_CASE("derivative matches a central difference of sinc") {
  for (const double x : {0.3, 1.0, 2.0816, 4.0, 7.7}) {
    const double h = 1e-5;
    CHECK(sinc_derivative(x) == doctest::Approx((sinc(x + h) - sinc(x - h)) / (2 * h)).epsilon(1e-8));
  }
}
