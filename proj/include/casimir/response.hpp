#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "casimir/mirrors.hpp"
#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::response {

enum class Method { Scattering, PFA, PerfectScattering };

std::string to_string(Method m);
/// Accepts "scattering", "pfa", "perfect".
Method method_from_string(const std::string& s);

/// One evaluation of the corrugation response G(k) (J/m^4).
struct ResponseSample {
  double k = 0.0;
  double L = 0.0;
  Material material;
  Method method = Method::Scattering;
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// rel_tol 1e-5 with adaptive azimuthal order.
QuadratureSpec default_spec();

/// Crossed second-order response from the scattering formula. For
/// h1 = a1 cos(kx), h2 = a2 cos(kx) (both measured toward the gap) the energy
/// correction per area is (a1 a2 / 2) G(k). k = 0 is delegated to e''_PP(L).
ResponseSample g_scattering(double k, double L, const Material& material, const QuadratureSpec& spec = default_spec());

/// Proximity-force value e''_PP(L), independent of k.
ResponseSample g_pfa(double k, double L, const Material& material, const QuadratureSpec& spec = default_spec());

/// G(k)/G(0) from the scattering formula.
double g_ratio(double k, double L, const Material& material, const QuadratureSpec& spec = default_spec());

/// Dispatch on method. PerfectScattering ignores `material`.
ResponseSample evaluate(Method method, double k, double L, const Material& material,
                        const QuadratureSpec& spec = default_spec());

/// Memo of evaluate() keyed on (method, k, L, material, rel_tol). Safe for
/// concurrent use.
class ResponseCache {
 public:
  ResponseSample get(Method method, double k, double L, const Material& material,
                     const QuadratureSpec& spec = default_spec());
  std::size_t size() const;

 private:
  using Key = std::tuple<int, double, double, int, double, double, double>;
  mutable std::mutex mutex_;
  std::map<Key, ResponseSample> samples_;
};

namespace detail {

/// Dimensionless integrand F at imaginary frequency xi (units c/L) and
/// transverse wavevector k (units 1/L), with the corrugation wavevector q.
double integrand(double xi, const mirrors::Vec2& k, const mirrors::Vec2& q, const mirrors::Medium& medium);

/// G for an arbitrary in-plane corrugation wavevector (rad/m).
ResponseSample g_scattering_vector(const mirrors::Vec2& kvec, double L, const Material& material,
                                   const QuadratureSpec& spec);

}  // namespace detail

}  // namespace casimir::response
