#include "casimir/lifshitz.hpp"

#include <cmath>
#include <sstream>

#include "casimir/mirrors.hpp"

namespace casimir {

void require_converged(const IntegralResult& r, const std::string& context) {
  if (r.converged) return;
  std::ostringstream os;
  os << context << ": quadrature did not converge (value " << r.value << ", error estimate "
     << r.error_estimate << ", " << r.evaluations << " evaluations)";
  throw QuadratureError(os.str(), r);
}

namespace lifshitz {

namespace {

enum class Order { Energy, First, Second };

// In units of L and c/L the integral reads
//   prefactor * int_0^inf dxi int_xi^inf kappa dkappa sum_p g_p(kappa),
// with g = ln(1 - x), 2 kappa x/(1-x), -4 kappa^2 x/(1-x)^2 for x = r^2 e^{-2 kappa}.
double integrand(Order order, double xi, double kap, const mirrors::Medium& medium) {
  const mirrors::Fresnel r = mirrors::specular_from_kappa(xi, kap, medium);
  const double decay = std::exp(-2.0 * kap);
  const double one_minus_decay = -std::expm1(-2.0 * kap);
  double sum = 0.0;
  for (double rp : {r.te, r.tm}) {
    const double x = rp * rp * decay;
    // 1 - x without cancellation when |r| -> 1 and kappa -> 0
    const double one_minus_x = one_minus_decay + decay * (1.0 - rp * rp);
    switch (order) {
      case Order::Energy:
        sum += x < 0.5 ? std::log1p(-x) : std::log(one_minus_x);
        break;
      case Order::First:
        sum += 2.0 * kap * x / one_minus_x;
        break;
      case Order::Second:
        sum -= 4.0 * kap * kap * x / (one_minus_x * one_minus_x);
        break;
    }
  }
  return kap * sum;
}

Quantity integrate(Order order, double L, const Material& material, const QuadratureSpec& spec) {
  if (!(L > 0.0)) throw std::invalid_argument("lifshitz: non-positive separation");
  if (!material.is_perfect() && !(material.lambdaP > 0.0)) {
    throw std::invalid_argument("lifshitz: non-positive plasma wavelength");
  }
  const mirrors::Medium medium = mirrors::Medium::from(material, L);
  QuadratureSpec outer = spec;
  QuadratureSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  inner.abs_tol = 0.0;

  const IntegralResult r = integrate_half_line_nested(
      [&](double xi) {
        return integrate_half_line([&](double t) { return integrand(order, xi, xi + t, medium); }, inner);
      },
      outer);
  require_converged(r, "lifshitz");

  const double hc = PhysicalConstants::hbar * PhysicalConstants::c;
  const int power = order == Order::Energy ? 3 : order == Order::First ? 4 : 5;
  const double prefactor = hc / (4.0 * kPi * kPi * std::pow(L, power));
  return {prefactor * r.value, prefactor * r.error_estimate};
}

}  // namespace

QuadratureSpec default_spec() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.transform_scale = 0.5;  // e^{-2 kappa L} decay in units of L
  return spec;
}

Quantity energy_per_area(double L, const Material& material, const QuadratureSpec& spec) {
  return integrate(Order::Energy, L, material, spec);
}

Quantity energy_first_derivative(double L, const Material& material, const QuadratureSpec& spec) {
  return integrate(Order::First, L, material, spec);
}

Quantity energy_second_derivative(double L, const Material& material, const QuadratureSpec& spec) {
  return integrate(Order::Second, L, material, spec);
}

PlaneEnergyResult plane_energy(double L, const Material& material, const QuadratureSpec& spec) {
  PlaneEnergyResult out;
  const Quantity e = energy_per_area(L, material, spec);
  const Quantity d1 = energy_first_derivative(L, material, spec);
  const Quantity d2 = energy_second_derivative(L, material, spec);
  out.e_pp = e.value;
  out.e_pp_error = e.error_estimate;
  out.d1 = d1.value;
  out.d1_error = d1.error_estimate;
  out.d2 = d2.value;
  out.d2_error = d2.error_estimate;
  out.material = material;
  out.L = L;
  return out;
}

double perfect_energy_per_area(double L) {
  const double hc = PhysicalConstants::hbar * PhysicalConstants::c;
  return -kPi * kPi * hc / (720.0 * L * L * L);
}

double perfect_energy_first_derivative(double L) {
  return -3.0 * perfect_energy_per_area(L) / L;
}

double perfect_energy_second_derivative(double L) {
  return 12.0 * perfect_energy_per_area(L) / (L * L);
}

}  // namespace lifshitz
}  // namespace casimir
