#pragma once

#include <array>
#include <cmath>

#include "casimir/model.hpp"

namespace casimir::mirrors {

enum Polarization : int { TE = 0, TM = 1 };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
};

/// Point on the imaginary-frequency axis: xi in rad/s, kvec in rad/m.
struct EvaluationPoint {
  double xi = 0.0;
  Vec2 kvec;
};

/// 2x2 reflection block indexed (outgoing polarization, incoming polarization).
struct ReflectionMatrix {
  std::array<double, 4> entries{};

  double& operator()(int out, int in) { return entries[2 * out + in]; }
  double operator()(int out, int in) const { return entries[2 * out + in]; }
};

/// Reflection of the upper plate from the lower-plate block. Mirroring
/// z -> -z maps the upward TM basis vector onto minus the downward one, so
/// the TE/TM cross terms change sign.
ReflectionMatrix upper_plate(const ReflectionMatrix& lower);

// ---------------------------------------------------------------------------
// SI interface

/// epsilon(i xi) = 1 + omega_P^2 / xi^2.
double epsilon_plasma(double xi, const Material& material);

/// sqrt(|k|^2 + epsilon xi^2 / c^2) in rad/m.
double kappa(const EvaluationPoint& point, double epsilon);

/// Diagonal Fresnel block, r_TE < 0 < r_TM.
ReflectionMatrix specular_reflection(const EvaluationPoint& point, const Material& material);

/// First-order nonspecular block of a sinusoidally corrugated plate per unit
/// corrugation amplitude (rad/m). The corrugation wavevector lies along x and
/// out_kvec must equal in.kvec +/- (corrugation_k, 0). Positive amplitude
/// displaces the surface toward the vacuum gap.
ReflectionMatrix nonspecular_first_order(const EvaluationPoint& in, const Vec2& out_kvec,
                                         double corrugation_k, const Material& material);

// ---------------------------------------------------------------------------
// Unit-free interface used inside integrands. Frequencies enter as xi/c and
// every wavevector shares one inverse-length unit (typically 1/L).

struct Medium {
  bool perfect = true;
  double plasma_k = 0.0;  // omega_P / c in the chosen unit

  /// Medium for `material` with lengths measured in `length_unit` metres.
  static Medium from(const Material& material, double length_unit);
};

struct Fresnel {
  double te;
  double tm;
};

Fresnel specular(double xi, double k, const Medium& medium);

/// Same as specular() but parameterized by kappa = sqrt(k^2 + xi^2) >= xi.
Fresnel specular_from_kappa(double xi, double kappa, const Medium& medium);

/// First-order kernel in the unit-free variables; see nonspecular_first_order.
ReflectionMatrix first_order(double xi, const Vec2& k_in, const Vec2& k_out, const Medium& medium);

}  // namespace casimir::mirrors
