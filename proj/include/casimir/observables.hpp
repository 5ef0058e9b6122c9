#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/response.hpp"

namespace casimir::observables {

using response::Method;

// Everything here follows from
//   delta E / (Lx Ly) = (a1 a2 / 2) G(k) cos(k b) sinc(k Ly theta / 2).
// The closed-form pieces take G directly so one response evaluation can be
// shared; the overloads taking a Material evaluate G first.

/// Energy correction per area (J/m^2).
double energy_correction(const Geometry& g, double response_value);
double energy_correction(const Geometry& g, const Material& material, Method method,
                         const QuadratureSpec& spec = response::default_spec());

/// Physical torque per area -d(delta E)/d(theta) (N/m).
double torque_signed(const Geometry& g, double response_value);

/// Torque per area in the restoring convention: positive when it drives
/// theta back toward 0.
double torque(const Geometry& g, double response_value);
double torque(const Geometry& g, const Material& material, Method method,
              const QuadratureSpec& spec = response::default_spec());

/// Lateral force per area -d(delta E)/db along x (N/m^2).
double lateral_force(const Geometry& g, double response_value);
double lateral_force(const Geometry& g, const Material& material, Method method,
                     const QuadratureSpec& spec = response::default_spec());

struct TorqueResult {
  double torque_per_area = 0.0;  // restoring magnitude, N/m
  double signed_torque = 0.0;    // -d(delta E)/d(theta) at theta_at
  double theta_at = 0.0;         // rad
  Method method = Method::Scattering;
  double response_value = 0.0;   // G used, J/m^4
};

/// Maximum restoring torque along b = 0 (geometry.b and geometry.theta are
/// ignored). theta is searched by golden section on [0.3, 1.0] lambdaC/Ly.
TorqueResult torque_max(const Geometry& g, double response_value, Method method);
TorqueResult torque_max(const Geometry& g, const Material& material, Method method,
                        const QuadratureSpec& spec = response::default_spec());

/// torque_max with G replaced by e''_PP(L).
TorqueResult torque_pfa_max(const Geometry& g, const Material& material,
                            const QuadratureSpec& spec = response::default_spec());

enum class Stability { RestoredWithoutSliding, RotatesAndSlides };
std::string to_string(Stability s);

/// Release from b = 0 at geometry.theta: restored without sliding iff
/// |theta| < lambdaC / Ly.
Stability stability_classify(const Geometry& g);

/// Raised when the coarse scan puts the maximum of k |G(k)| on the bracket edge.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, std::vector<std::pair<double, double>> profile)
      : std::runtime_error(what), profile_(std::move(profile)) {}
  const std::vector<std::pair<double, double>>& profile() const { return profile_; }

 private:
  std::vector<std::pair<double, double>> profile_;
};

struct OptimalWavenumber {
  double k = 0.0;          // rad/m
  double k_times_g = 0.0;  // k |G(k)| at the optimum
  std::vector<std::pair<double, double>> profile;  // coarse scan (k, k|G|)
};

/// argmax_k k |G(k)| on [0.2/L, 20/L]: coarse log scan then golden section in
/// log k. PFA has no interior maximum and is rejected.
OptimalWavenumber optimal_wavenumber(double L, const Material& material, Method method = Method::Scattering,
                                     const QuadratureSpec& spec = response::default_spec(),
                                     double log_tol = 1e-3);

struct LandscapePoint {
  double b = 0.0;
  double theta = 0.0;
  double delta_e_per_area = 0.0;
};

struct Landscape {
  int b_steps = 0;
  int theta_steps = 0;
  double theta_max = 0.0;
  std::vector<LandscapePoint> points;  // row-major: b outer, theta inner

  const LandscapePoint& at(int ib, int it) const { return points[static_cast<std::size_t>(ib) * theta_steps + it]; }
};

/// Uniform grid over b in [0, 2 lambdaC] and theta in [-2 theta_min, 2 theta_min],
/// theta_min being the angle of the first sinc minimum.
Landscape landscape_grid(const Geometry& g, double response_value, int b_steps, int theta_steps);
Landscape landscape_grid(const Geometry& g, const Material& material, Method method, int b_steps, int theta_steps,
                         const QuadratureSpec& spec = response::default_spec());

struct SweepRow {
  double k = 0.0;
  double tau_scattering = 0.0;
  double tau_pfa = 0.0;
  double tau_perfect = 0.0;
  double theta_star = 0.0;
  std::optional<std::string> error;  // set when the row failed
};

/// Maximum torque per area at each k for the three methods.
std::vector<SweepRow> sweep_k(double L, const Material& material, const std::vector<double>& k_grid,
                              double a1a2, double Ly, const QuadratureSpec& spec = response::default_spec(),
                              int workers = 1);

/// Argument of the first minimum of sinc, located numerically on (pi, 2 pi).
double sinc_first_minimum();
/// Argument of the maximum of -sinc' on (0, pi).
double sinc_derivative_extremum();

}  // namespace casimir::observables
