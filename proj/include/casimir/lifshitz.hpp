#pragma once

#include <stdexcept>
#include <string>

#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// A quadrature that exhausted its budget. Carries the partial result.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, IntegralResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const IntegralResult& partial() const { return partial_; }

 private:
  IntegralResult partial_;
};

/// Throws QuadratureError unless r converged.
void require_converged(const IntegralResult& r, const std::string& context);

namespace lifshitz {

struct Quantity {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Parallel-plate energy per area and its first two separation derivatives
/// at zero temperature. e_pp < 0, d1 > 0, d2 < 0.
struct PlaneEnergyResult {
  double e_pp = 0.0;  // J/m^2
  double d1 = 0.0;    // J/m^3 (the attractive force per area is -d1)
  double d2 = 0.0;    // J/m^4
  double e_pp_error = 0.0;
  double d1_error = 0.0;
  double d2_error = 0.0;
  Material material;
  double L = 0.0;
};

QuadratureSpec default_spec();

Quantity energy_per_area(double L, const Material& material, const QuadratureSpec& spec = default_spec());
Quantity energy_first_derivative(double L, const Material& material, const QuadratureSpec& spec = default_spec());
Quantity energy_second_derivative(double L, const Material& material, const QuadratureSpec& spec = default_spec());

PlaneEnergyResult plane_energy(double L, const Material& material, const QuadratureSpec& spec = default_spec());

/// Ideal-mirror closed forms: -pi^2 hbar c / (720 L^3) and its derivatives.
double perfect_energy_per_area(double L);
double perfect_energy_first_derivative(double L);
double perfect_energy_second_derivative(double L);

}  // namespace lifshitz
}  // namespace casimir
