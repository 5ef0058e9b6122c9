// First-order nonspecular reflection of a plate whose surface sits at
// z = h(x, y) (vacuum above, metal below), to linear order in h.
//
// Derived by expanding the continuity of tangential E and H at z = h about
// z = 0 and solving for the outgoing TE/TM amplitudes at k_out = k_in + Q,
// then continuing to imaginary frequency. Basis vectors: e_TE = z x k^,
// e_TM = (+/- q k^ - k z) / omega for up/down waves. With
// C = k^_in . k^_out and S = (k^_in x k^_out)_z, per unit h(Q):
//
//   R_TE<-TE = -2 (eps-1) xi^2 kap_in C / ((kap_in + kt_in)(kap_out + kt_out))
//   R_TM<-TE = -2 (eps-1) xi kap_in kt_out S / ((kap_in + kt_in)(eps kap_out + kt_out))
//   R_TE<-TM = -2 (eps-1) xi kap_in kt_in S / ((eps kap_in + kt_in)(kap_out + kt_out))
//   R_TM<-TM = 2 (eps-1) kap_in (eps k_in k_out + kt_in kt_out C)
//              / ((eps kap_in + kt_in)(eps kap_out + kt_out))
//
// kap = sqrt(k^2 + xi^2), kt = sqrt(k^2 + eps xi^2). For k_out = k_in these
// reduce to 2 kap r_p, the derivative of the specular phase e^{-2 kap h}.
// Below, every factor of eps is cleared with (eps - 1) xi^2 = Omega^2 so
// nothing divides by xi.

#include <cmath>

#include "casimir/mirrors.hpp"

namespace casimir::mirrors {

namespace {

struct Direction {
  double c;
  double s;
};

Direction relative_direction(const Vec2& a, const Vec2& b, double na, double nb) {
  // Zero wavevectors get the x axis; the polarization sum is isotropic there.
  const Vec2 ua = na > 0.0 ? Vec2{a.x / na, a.y / na} : Vec2{1.0, 0.0};
  const Vec2 ub = nb > 0.0 ? Vec2{b.x / nb, b.y / nb} : Vec2{1.0, 0.0};
  return {ua.x * ub.x + ua.y * ub.y, ua.x * ub.y - ua.y * ub.x};
}

}  // namespace

ReflectionMatrix first_order(double xi, const Vec2& k_in, const Vec2& k_out, const Medium& medium) {
  const double kin = k_in.norm();
  const double kout = k_out.norm();
  const Direction d = relative_direction(k_in, k_out, kin, kout);
  const double xi2 = xi * xi;
  const double kap_in = std::sqrt(kin * kin + xi2);
  const double kap_out = std::sqrt(kout * kout + xi2);

  ReflectionMatrix m;
  if (medium.perfect) {
    m(TE, TE) = -2.0 * kap_in * d.c;
    m(TM, TE) = -2.0 * xi * kap_in * d.s / kap_out;
    m(TE, TM) = -2.0 * xi * d.s;
    m(TM, TM) = 2.0 * (kin * kout + xi2 * d.c) / kap_out;
    return m;
  }

  const double om2 = medium.plasma_k * medium.plasma_k;
  const double kt_in = std::sqrt(kap_in * kap_in + om2);
  const double kt_out = std::sqrt(kap_out * kap_out + om2);
  const double te_in = kap_in + kt_in;
  const double te_out = kap_out + kt_out;
  // xi^2 (eps kap + kt)
  const double tm_in = (xi2 + om2) * kap_in + xi2 * kt_in;
  const double tm_out = (xi2 + om2) * kap_out + xi2 * kt_out;

  m(TE, TE) = -2.0 * om2 * kap_in * d.c / (te_in * te_out);
  m(TM, TE) = -2.0 * om2 * xi * kap_in * kt_out * d.s / (te_in * tm_out);
  m(TE, TM) = -2.0 * om2 * xi * kap_in * kt_in * d.s / (tm_in * te_out);
  m(TM, TM) = 2.0 * om2 * kap_in * ((xi2 + om2) * kin * kout + xi2 * kt_in * kt_out * d.c) / (tm_in * tm_out);
  return m;
}

}  // namespace casimir::mirrors
