#include "casimir/response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/lifshitz.hpp"

namespace casimir::response {

std::string to_string(Method m) {
  switch (m) {
    case Method::Scattering: return "scattering";
    case Method::PFA: return "pfa";
    case Method::PerfectScattering: return "perfect";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  if (s == "scattering") return Method::Scattering;
  if (s == "pfa") return Method::PFA;
  if (s == "perfect") return Method::PerfectScattering;
  throw std::invalid_argument("unknown method '" + s + "' (expected scattering, pfa or perfect)");
}

QuadratureSpec default_spec() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-5;
  spec.transform_scale = 0.5;
  return spec;
}

namespace detail {

namespace {

struct SpecularState {
  double kappa;
  double d_te;  // 1 / (1 - r_TE^2 e^{-2 kappa})
  double d_tm;
};

SpecularState specular_state(double xi, double k, const mirrors::Medium& medium) {
  const double kap = std::sqrt(k * k + xi * xi);
  const mirrors::Fresnel r = mirrors::specular_from_kappa(xi, kap, medium);
  const double decay = std::exp(-2.0 * kap);
  const double one_minus_decay = -std::expm1(-2.0 * kap);
  return {kap, 1.0 / (one_minus_decay + decay * (1.0 - r.te * r.te)),
          1.0 / (one_minus_decay + decay * (1.0 - r.tm * r.tm))};
}

}  // namespace

double integrand(double xi, const mirrors::Vec2& k, const mirrors::Vec2& q, const mirrors::Medium& medium) {
  using mirrors::TE;
  using mirrors::TM;
  const mirrors::Vec2 k2 = k + q;
  const SpecularState s1 = specular_state(xi, k.norm(), medium);
  const SpecularState s2 = specular_state(xi, k2.norm(), medium);

  // Round trip k -> k2 on the upper plate, k2 -> k on the lower one.
  const mirrors::ReflectionMatrix up = mirrors::upper_plate(mirrors::first_order(xi, k, k2, medium));
  const mirrors::ReflectionMatrix down = mirrors::first_order(xi, k2, k, medium);

  const double d1[2] = {s1.d_te, s1.d_tm};
  const double d2[2] = {s2.d_te, s2.d_tm};
  double trace = 0.0;
  for (int p = 0; p < 2; ++p) {
    for (int pp = 0; pp < 2; ++pp) {
      trace += d1[p] * d2[pp] * down(p, pp) * up(pp, p);
    }
  }
  return std::exp(-(s1.kappa + s2.kappa)) * trace;
}

ResponseSample g_scattering_vector(const mirrors::Vec2& kvec, double L, const Material& material,
                                   const QuadratureSpec& spec) {
  if (!(L > 0.0)) throw std::invalid_argument("response: non-positive separation");
  const mirrors::Medium medium = mirrors::Medium::from(material, L);
  const mirrors::Vec2 q{kvec.x * L, kvec.y * L};

  const IntegralResult r = integrate_half_line_nested(
      [&](double xi) {
        return integrate_plane_polar(
            [&](double radius, double phi) {
              return integrand(xi, {radius * std::cos(phi), radius * std::sin(phi)}, q, medium);
            },
            spec);
      },
      spec);
  require_converged(r, "response G(k)");

  const double hc = PhysicalConstants::hbar * PhysicalConstants::c;
  const double prefactor = -hc / (8.0 * kPi * kPi * kPi * std::pow(L, 5));
  ResponseSample out;
  out.k = kvec.norm();
  out.L = L;
  out.material = material;
  out.method = material.is_perfect() ? Method::PerfectScattering : Method::Scattering;
  out.value = prefactor * r.value;
  out.error_estimate = std::abs(prefactor) * r.error_estimate;
  out.evaluations = r.evaluations;
  return out;
}

}  // namespace detail

namespace {

QuadratureSpec lifshitz_spec_for(const QuadratureSpec& spec) {
  QuadratureSpec s = lifshitz::default_spec();
  s.rel_tol = std::min(s.rel_tol, spec.rel_tol);
  s.max_subdivisions = spec.max_subdivisions;
  return s;
}

ResponseSample from_plane(double k, double L, const Material& material, Method method, const QuadratureSpec& spec) {
  const lifshitz::Quantity d2 = lifshitz::energy_second_derivative(L, material, lifshitz_spec_for(spec));
  ResponseSample out;
  out.k = k;
  out.L = L;
  out.material = material;
  out.method = method;
  out.value = d2.value;
  out.error_estimate = d2.error_estimate;
  return out;
}

}  // namespace

ResponseSample g_scattering(double k, double L, const Material& material, const QuadratureSpec& spec) {
  if (!(k >= 0.0)) throw std::invalid_argument("response: k must be non-negative");
  const Method method = material.is_perfect() ? Method::PerfectScattering : Method::Scattering;
  if (k == 0.0) return from_plane(0.0, L, material, method, spec);
  return detail::g_scattering_vector({k, 0.0}, L, material, spec);
}

ResponseSample g_pfa(double k, double L, const Material& material, const QuadratureSpec& spec) {
  if (!(k >= 0.0)) throw std::invalid_argument("response: k must be non-negative");
  return from_plane(k, L, material, Method::PFA, spec);
}

double g_ratio(double k, double L, const Material& material, const QuadratureSpec& spec) {
  const double g0 = g_scattering(0.0, L, material, spec).value;
  if (k == 0.0) return 1.0;
  return g_scattering(k, L, material, spec).value / g0;
}

ResponseSample evaluate(Method method, double k, double L, const Material& material, const QuadratureSpec& spec) {
  switch (method) {
    case Method::Scattering: return g_scattering(k, L, material, spec);
    case Method::PerfectScattering: return g_scattering(k, L, Material::perfect(), spec);
    case Method::PFA: return g_pfa(k, L, material, spec);
  }
  throw std::invalid_argument("response: unknown method");
}

ResponseSample ResponseCache::get(Method method, double k, double L, const Material& material,
                                  const QuadratureSpec& spec) {
  const Material effective = method == Method::PerfectScattering ? Material::perfect() : material;
  const Key key{static_cast<int>(method), k, L, static_cast<int>(effective.kind),
                effective.is_perfect() ? 0.0 : effective.lambdaP, spec.rel_tol, spec.abs_tol};
  {
    std::lock_guard lock(mutex_);
    if (auto it = samples_.find(key); it != samples_.end()) return it->second;
  }
  // Computed outside the lock; a racing duplicate computes the same value.
  ResponseSample sample = evaluate(method, k, L, effective, spec);
  std::lock_guard lock(mutex_);
  samples_.emplace(key, sample);
  return sample;
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mutex_);
  return samples_.size();
}

}  // namespace casimir::response
