#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace casimir {

/// Tolerances and budgets for one integral. Half-line integrals are mapped
/// onto [0, 1) with u = x / (x + transform_scale).
struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  double transform_scale = 1.0;
  // Azimuthal trapezoid order for plane integrals; 0 means adaptive doubling
  // from 8 points up to max_azimuthal_order.
  int azimuthal_order = 0;
  int max_azimuthal_order = 4096;

  void check() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// The integrand returned NaN or Inf.
class EvaluationFailure : public std::runtime_error {
 public:
  EvaluationFailure(const std::string& where, double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

using Integrand1D = std::function<double(double)>;
using IntegrandPolar = std::function<double(double radius, double azimuth)>;
using NestedIntegrand = std::function<IntegralResult(double)>;

/// Adaptive Gauss-Kronrod (7/15) on a finite interval.
IntegralResult integrate_interval(const Integrand1D& f, double a, double b, const QuadratureSpec& spec);

/// Integral of f over [0, inf).
IntegralResult integrate_half_line(const Integrand1D& f, const QuadratureSpec& spec);

/// Half-line integral whose integrand is itself an integral. Inner error
/// estimates are carried into the outer estimate and inner non-convergence
/// clears the outer converged flag.
IntegralResult integrate_half_line_nested(const NestedIntegrand& f, const QuadratureSpec& spec);

/// Trapezoid rule over one period [0, 2 pi).
IntegralResult integrate_periodic(const Integrand1D& f, const QuadratureSpec& spec);

/// Integral of f(r, phi) r dr dphi over the plane. The radius Jacobian is
/// applied here; f is the bare integrand.
IntegralResult integrate_plane_polar(const IntegrandPolar& f, const QuadratureSpec& spec);

}  // namespace casimir
