#include <doctest.h>

#include <cmath>
#include <limits>

#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;

namespace {

double rel_err(double value, double exact) { return std::abs(value / exact - 1.0); }

}  // namespace

TEST_CASE("half-line analytic integrals") {
  QuadratureSpec spec;
  const auto a = integrate_half_line([](double x) { return std::exp(-x); }, spec);
  const auto b = integrate_half_line([](double x) { return x * std::exp(-x); }, spec);
  const auto c = integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, spec);
  CHECK(a.converged);
  CHECK(rel_err(a.value, 1.0) < spec.rel_tol);
  CHECK(rel_err(b.value, 1.0) < spec.rel_tol);
  CHECK(rel_err(c.value, kPi / 2) < spec.rel_tol);
  CHECK(a.error_estimate >= 0.0);
  CHECK(a.error_estimate <= spec.rel_tol * std::abs(a.value));
}

TEST_CASE("finite interval") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const auto r = integrate_interval([](double x) { return std::cos(x); }, 0.0, kPi / 2, spec);
  CHECK(rel_err(r.value, 1.0) < 1e-10);
}

TEST_CASE("transform scale matched to the decay") {
  QuadratureSpec spec;
  spec.transform_scale = 0.05;
  const auto r = integrate_half_line([](double x) { return std::exp(-20.0 * x); }, spec);
  CHECK(rel_err(r.value, 0.05) < spec.rel_tol);
}

TEST_CASE("NaN from the integrand reports the abscissa") {
  QuadratureSpec spec;
  try {
    integrate_interval([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0,
                       spec);
    FAIL("expected EvaluationFailure");
  } catch (const EvaluationFailure& e) {
    CHECK(e.abscissa() > 0.5);
    CHECK(e.abscissa() <= 1.0);
  }
}

TEST_CASE("budget exhaustion is reported, not thrown") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.max_subdivisions = 2;
  const auto r = integrate_interval([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
  CHECK_FALSE(r.converged);
  CHECK(r.error_estimate > 0.0);
}

TEST_CASE("spec invariants") {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  CHECK_THROWS(spec.check());
  spec.abs_tol = 1e-9;
  CHECK_NOTHROW(spec.check());
  spec.max_subdivisions = 0;
  CHECK_THROWS(spec.check());
}

TEST_CASE("linearity within the error estimates") {
  QuadratureSpec spec;
  auto f = [](double x) { return (1.0 + 2.0 * x + 0.5 * x * x * x) * std::exp(-1.3 * x); };
  auto g = [](double x) { return (3.0 - x + x * x) * std::exp(-0.7 * x); };
  const auto rf = integrate_half_line(f, spec);
  const auto rg = integrate_half_line(g, spec);
  const auto rh = integrate_half_line([&](double x) { return 2.5 * f(x) - 1.5 * g(x); }, spec);
  const double combined = 2.5 * rf.value - 1.5 * rg.value;
  CHECK(std::abs(rh.value - combined) <= 2.5 * rf.error_estimate + 1.5 * rg.error_estimate + rh.error_estimate);
}

TEST_CASE("tightening the tolerance does not increase the true error") {
  const double exact = kPi / 2;
  QuadratureSpec loose;
  loose.rel_tol = 1e-4;
  QuadratureSpec tight;
  tight.rel_tol = 1e-5;
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  CHECK(std::abs(integrate_half_line(f, tight).value - exact) <= std::abs(integrate_half_line(f, loose).value - exact));
}

TEST_CASE("nested half line carries inner errors") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  // int_0^inf dx int_0^inf dy exp(-x - 2y) = 1/2
  const auto r = integrate_half_line_nested(
      [&](double x) {
        auto inner = integrate_half_line([x](double y) { return std::exp(-x - 2.0 * y); }, spec);
        return inner;
      },
      spec);
  CHECK(r.converged);
  CHECK(rel_err(r.value, 0.5) < 1e-9);
}

TEST_CASE("periodic trapezoid") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  const auto r = integrate_periodic([](double p) { return std::exp(std::cos(p)); }, spec);
  CHECK(rel_err(r.value, 2.0 * kPi * std::cyl_bessel_i(0.0, 1.0)) < 1e-12);
}

TEST_CASE("plane integrals") {
  QuadratureSpec spec;
  const auto gauss = integrate_plane_polar([](double r, double) { return std::exp(-r * r); }, spec);
  CHECK(rel_err(gauss.value, kPi) < spec.rel_tol);
  const auto cos2 = integrate_plane_polar([](double r, double p) { return std::exp(-r) * std::cos(p) * std::cos(p); }, spec);
  CHECK(rel_err(cos2.value, kPi) < spec.rel_tol);
}

TEST_CASE("anisotropic plane integral against a brute-force grid") {
  // Midpoint sum on 2.4e8 (r, phi) nodes over r < 60; analytic value is
  // 2 pi / 0.75^1.5 = 9.673596609...
  const double grid = 9.673596674693762;
  QuadratureSpec spec;
  const auto r = integrate_plane_polar([](double rr, double p) { return std::exp(-rr * (1.0 + 0.5 * std::cos(p))); }, spec);
  CHECK(rel_err(r.value, grid) < 1e-6);
  CHECK(rel_err(r.value, 2.0 * kPi / std::pow(0.75, 1.5)) < spec.rel_tol);
}

TEST_CASE("symmetric integrands do not depend on the azimuthal order") {
  auto f = [](double r, double) { return r * std::exp(-1.5 * r); };
  QuadratureSpec a;
  a.azimuthal_order = 8;
  QuadratureSpec b;
  b.azimuthal_order = 64;
  CHECK(rel_err(integrate_plane_polar(f, a).value, integrate_plane_polar(f, b).value) < 1e-10);
}
