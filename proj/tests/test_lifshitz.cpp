#include <doctest.h>

#include <cmath>

#include "casimir/lifshitz.hpp"

using namespace casimir;
using namespace casimir::lifshitz;

namespace {

const Material kGold = Material::plasma(137e-9);
const Material kPerfect = Material::perfect();

double rel_err(double value, double exact) { return std::abs(value / exact - 1.0); }

}  // namespace

TEST_CASE("perfect-mirror closed forms") {
  CHECK(perfect_energy_per_area(1e-6) == doctest::Approx(-4.334e-10).epsilon(1e-3));
  CHECK(perfect_energy_second_derivative(1e-6) == doctest::Approx(-5.2007e3).epsilon(1e-4));
  CHECK(perfect_energy_first_derivative(1e-6) == doctest::Approx(1.300e-3).epsilon(1e-3));
}

TEST_CASE("perfect-mirror integral path reproduces the closed forms") {
  for (const double L : {0.1e-6, 1e-6, 10e-6}) {
    CHECK(rel_err(energy_per_area(L, kPerfect).value, perfect_energy_per_area(L)) < 1e-4);
    CHECK(rel_err(energy_first_derivative(L, kPerfect).value, perfect_energy_first_derivative(L)) < 1e-4);
    CHECK(rel_err(energy_second_derivative(L, kPerfect).value, perfect_energy_second_derivative(L)) < 1e-4);
  }
}

TEST_CASE("plasma values against an independent (xi, |k|) quadrature") {
  // Nested adaptive quadrature over xi and |k| with the textbook Fresnel
  // formulas, rel_tol 1e-11, computed by a separate script.
  struct Row {
    double L, e, d1, d2;
  };
  const Row rows[] = {{100e-9, -2.2826490333837791e-07, 5.770362320486869, -198295488.73021582},
                      {1e-6, -3.983586735893242e-10, 0.0011626641363908126, -4525.883986155433}};
  for (const Row& r : rows) {
    const PlaneEnergyResult p = plane_energy(r.L, kGold);
    CHECK(rel_err(p.e_pp, r.e) < 1e-7);
    CHECK(rel_err(p.d1, r.d1) < 1e-7);
    CHECK(rel_err(p.d2, r.d2) < 1e-7);
    CHECK(p.e_pp_error >= 0.0);
  }
}

TEST_CASE("signs and bracketing") {
  for (const double L : {50e-9, 100e-9, 1e-6}) {
    const PlaneEnergyResult p = plane_energy(L, kGold);
    CHECK(p.e_pp < 0.0);
    CHECK(p.d1 > 0.0);
    CHECK(p.d2 < 0.0);
    CHECK(p.e_pp > perfect_energy_per_area(L));
    CHECK(p.d2 > perfect_energy_second_derivative(L));
  }
}

TEST_CASE("plasma converges to perfect mirrors for small plasma wavelength") {
  const double L = 1e-6;
  CHECK(rel_err(energy_per_area(L, Material::plasma(1e-3 * L)).value, perfect_energy_per_area(L)) < 1e-3);
}

TEST_CASE("plasma approaches perfect mirrors monotonically with distance") {
  double prev = 0.0;
  for (const double ratio : {1.0, 5.0, 20.0, 100.0}) {
    const double L = ratio * 137e-9;
    const double q = energy_per_area(L, kGold).value / perfect_energy_per_area(L);
    CHECK(q < 1.0);
    CHECK(q > prev);
    prev = q;
  }
}

TEST_CASE("derivatives match central differences") {
  for (const Material& m : {kGold, kPerfect}) {
    for (const double L : {100e-9, 1e-6}) {
      const double h = 5e-3 * L;
      const double d1 = (energy_per_area(L + h, m).value - energy_per_area(L - h, m).value) / (2 * h);
      const double d2 = (energy_per_area(L + h, m).value - 2 * energy_per_area(L, m).value +
                         energy_per_area(L - h, m).value) / (h * h);
      CHECK(rel_err(energy_first_derivative(L, m).value, d1) < 1e-3);
      CHECK(rel_err(energy_second_derivative(L, m).value, d2) < 1e-3);
    }
  }
}

TEST_CASE("non-positive separation throws") {
  CHECK_THROWS(energy_per_area(0.0, kGold));
  CHECK_THROWS(energy_second_derivative(-1e-6, kPerfect));
}
