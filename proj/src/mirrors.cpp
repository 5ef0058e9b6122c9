#include "casimir/mirrors.hpp"

#include <stdexcept>

namespace casimir::mirrors {

ReflectionMatrix upper_plate(const ReflectionMatrix& lower) {
  ReflectionMatrix m = lower;
  m(TE, TM) = -lower(TE, TM);
  m(TM, TE) = -lower(TM, TE);
  return m;
}

double epsilon_plasma(double xi, const Material& material) {
  if (!(xi > 0.0)) throw std::invalid_argument("epsilon_plasma: xi must be positive");
  if (material.is_perfect()) throw std::invalid_argument("epsilon_plasma: perfect mirrors have no dielectric function");
  const double ratio = material.plasma_frequency() / xi;
  return 1.0 + ratio * ratio;
}

double kappa(const EvaluationPoint& point, double epsilon) {
  const double k = point.kvec.norm();
  const double q = point.xi / PhysicalConstants::c;
  return std::sqrt(k * k + epsilon * q * q);
}

Medium Medium::from(const Material& material, double length_unit) {
  if (material.is_perfect()) return {true, 0.0};
  return {false, material.plasma_wavenumber() * length_unit};
}

Fresnel specular_from_kappa(double xi, double kap, const Medium& medium) {
  if (medium.perfect) return {-1.0, 1.0};
  const double om2 = medium.plasma_k * medium.plasma_k;
  const double xi2 = xi * xi;
  // epsilon xi^2 = xi^2 + Omega^2, so kappa_t = sqrt(kappa^2 + Omega^2).
  const double kap_t = std::sqrt(kap * kap + om2);
  const double sum_te = kap + kap_t;
  const double te = -om2 / (sum_te * sum_te);
  const double tm = ((xi2 + om2) * kap - xi2 * kap_t) / ((xi2 + om2) * kap + xi2 * kap_t);
  return {te, tm};
}

Fresnel specular(double xi, double k, const Medium& medium) {
  return specular_from_kappa(xi, std::sqrt(k * k + xi * xi), medium);
}

ReflectionMatrix specular_reflection(const EvaluationPoint& point, const Material& material) {
  if (!(point.xi > 0.0)) throw std::invalid_argument("specular_reflection: xi must be positive");
  const Fresnel r = specular(point.xi / PhysicalConstants::c, point.kvec.norm(), Medium::from(material, 1.0));
  ReflectionMatrix m;
  m(TE, TE) = r.te;
  m(TM, TM) = r.tm;
  return m;
}

ReflectionMatrix nonspecular_first_order(const EvaluationPoint& in, const Vec2& out_kvec,
                                         double corrugation_k, const Material& material) {
  if (!(in.xi > 0.0)) throw std::invalid_argument("nonspecular_first_order: xi must be positive");
  const Vec2 shift = out_kvec - in.kvec;
  const double scale = std::max({in.kvec.norm(), out_kvec.norm(), std::abs(corrugation_k)});
  const double tol = 1e-9 * scale;
  const bool along_axis = std::abs(shift.y) <= tol;
  const bool one_order = std::abs(std::abs(shift.x) - std::abs(corrugation_k)) <= tol;
  if (!along_axis || !one_order) {
    throw std::invalid_argument(
        "nonspecular_first_order: out - in must equal +/- the corrugation wavevector along x");
  }
  return first_order(in.xi / PhysicalConstants::c, in.kvec, out_kvec, Medium::from(material, 1.0));
}

}  // namespace casimir::mirrors
