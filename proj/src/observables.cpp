#include "casimir/observables.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "casimir/golden.hpp"

namespace casimir::observables {

namespace {

double rotation_argument(const Geometry& g, double k) { return 0.5 * k * g.Ly * g.theta; }

double response_for(const Geometry& g, const Material& material, Method method, const QuadratureSpec& spec) {
  require_valid(g, material);
  return response::evaluate(method, corrugation_wavenumber(g.lambdaC), g.L, material, spec).value;
}

}  // namespace

double sinc_first_minimum() {
  return golden_section_maximize([](double x) { return -sinc(x); }, kPi, 2.0 * kPi, 1e-12).x;
}

double sinc_derivative_extremum() {
  return golden_section_maximize([](double x) { return -sinc_derivative(x); }, 0.0, kPi, 1e-12).x;
}

double energy_correction(const Geometry& g, double G) {
  const double k = corrugation_wavenumber(g.lambdaC);
  return 0.5 * g.amplitude_product() * G * std::cos(k * g.b) * sinc(rotation_argument(g, k));
}

double energy_correction(const Geometry& g, const Material& material, Method method, const QuadratureSpec& spec) {
  return energy_correction(g, response_for(g, material, method, spec));
}

double torque_signed(const Geometry& g, double G) {
  const double k = corrugation_wavenumber(g.lambdaC);
  return -0.5 * g.amplitude_product() * G * std::cos(k * g.b) * 0.5 * k * g.Ly *
         sinc_derivative(rotation_argument(g, k));
}

double torque(const Geometry& g, double G) {
  if (g.theta == 0.0) return 0.0;
  return g.theta > 0.0 ? -torque_signed(g, G) : torque_signed(g, G);
}

double torque(const Geometry& g, const Material& material, Method method, const QuadratureSpec& spec) {
  return torque(g, response_for(g, material, method, spec));
}

double lateral_force(const Geometry& g, double G) {
  const double k = corrugation_wavenumber(g.lambdaC);
  return 0.5 * g.amplitude_product() * G * k * std::sin(k * g.b) * sinc(rotation_argument(g, k));
}

double lateral_force(const Geometry& g, const Material& material, Method method, const QuadratureSpec& spec) {
  return lateral_force(g, response_for(g, material, method, spec));
}

TorqueResult torque_max(const Geometry& g, double G, Method method) {
  const double unit = g.lambdaC / g.Ly;
  const double lo = 0.3 * unit;
  const double hi = 1.0 * unit;
  Geometry probe = g;
  probe.b = 0.0;
  auto restoring = [&](double theta) {
    probe.theta = theta;
    return torque(probe, G);
  };
  const GoldenResult best = golden_section_maximize(restoring, lo, hi, 1e-6 * hi);
  const double edge = 1e-4 * (hi - lo);
  if (G != 0.0 && g.amplitude_product() != 0.0 && (best.x - lo < edge || hi - best.x < edge)) {
    std::ostringstream os;
    os << "torque_max: no interior maximum in [" << lo << ", " << hi << "] rad (found " << best.x << ")";
    throw std::runtime_error(os.str());
  }
  probe.theta = best.x;
  TorqueResult out;
  out.torque_per_area = best.value;
  out.signed_torque = torque_signed(probe, G);
  out.theta_at = best.x;
  out.method = method;
  out.response_value = G;
  return out;
}

TorqueResult torque_max(const Geometry& g, const Material& material, Method method, const QuadratureSpec& spec) {
  return torque_max(g, response_for(g, material, method, spec), method);
}

TorqueResult torque_pfa_max(const Geometry& g, const Material& material, const QuadratureSpec& spec) {
  return torque_max(g, material, Method::PFA, spec);
}

std::string to_string(Stability s) {
  return s == Stability::RestoredWithoutSliding ? "restored_without_sliding" : "rotates_and_slides";
}

Stability stability_classify(const Geometry& g) {
  // Past theta = lambdaC/Ly the sinc factor changes sign and b = 0 stops
  // being a lateral minimum; the boundary itself has zero lateral curvature.
  return std::abs(g.theta) < g.lambdaC / g.Ly ? Stability::RestoredWithoutSliding : Stability::RotatesAndSlides;
}

OptimalWavenumber optimal_wavenumber(double L, const Material& material, Method method, const QuadratureSpec& spec,
                                     double log_tol) {
  if (method == Method::PFA) {
    throw std::invalid_argument("optimal_wavenumber: k e''_PP grows linearly in k, there is no optimum for PFA");
  }
  if (!(L > 0.0)) throw std::invalid_argument("optimal_wavenumber: non-positive separation");

  // s = ln(k L)
  auto objective = [&](double s) {
    const double k = std::exp(s) / L;
    return k * std::abs(response::evaluate(method, k, L, material, spec).value);
  };
  const double s_lo = std::log(0.2);
  const double s_hi = std::log(20.0);
  constexpr int kScan = 9;
  OptimalWavenumber out;
  std::vector<double> s_grid(kScan);
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    s_grid[i] = s_lo + (s_hi - s_lo) * i / (kScan - 1);
    const double v = objective(s_grid[i]);
    out.profile.emplace_back(std::exp(s_grid[i]) / L, v);
    if (v > out.profile[best].second) best = i;
  }
  if (best == 0 || best == kScan - 1) {
    std::ostringstream os;
    os << "optimal_wavenumber: maximum of k|G(k)| at the bracket edge k = " << out.profile[best].first
       << " rad/m; sampled profile:";
    for (const auto& [k, v] : out.profile) os << " (" << k << ", " << v << ")";
    throw BracketError(os.str(), out.profile);
  }
  const GoldenResult g = golden_section_maximize(objective, s_grid[best - 1], s_grid[best + 1], log_tol);
  out.k = std::exp(g.x) / L;
  out.k_times_g = g.value;
  return out;
}

Landscape landscape_grid(const Geometry& g, double G, int b_steps, int theta_steps) {
  if (b_steps < 8 || theta_steps < 8) throw std::invalid_argument("landscape_grid: need at least 8 steps per axis");
  const double k = corrugation_wavenumber(g.lambdaC);
  Landscape out;
  out.b_steps = b_steps;
  out.theta_steps = theta_steps;
  out.theta_max = 2.0 * (2.0 * sinc_first_minimum() / (k * g.Ly));
  out.points.reserve(static_cast<std::size_t>(b_steps) * theta_steps);
  // theta_j = theta_max (j - h) / h keeps the grid exactly symmetric.
  const double half = 0.5 * (theta_steps - 1);
  Geometry p = g;
  for (int ib = 0; ib < b_steps; ++ib) {
    p.b = 2.0 * g.lambdaC * ib / (b_steps - 1);
    for (int it = 0; it < theta_steps; ++it) {
      p.theta = out.theta_max * ((it - half) / half);
      out.points.push_back({p.b, p.theta, energy_correction(p, G)});
    }
  }
  return out;
}

Landscape landscape_grid(const Geometry& g, const Material& material, Method method, int b_steps, int theta_steps,
                         const QuadratureSpec& spec) {
  return landscape_grid(g, response_for(g, material, method, spec), b_steps, theta_steps);
}

namespace {

SweepRow sweep_row(double k, double L, const Material& material, double g_pfa, double a1a2, double Ly,
                   const QuadratureSpec& spec) {
  SweepRow row;
  row.k = k;
  try {
    Geometry geom;
    geom.L = L;
    geom.lambdaC = 2.0 * kPi / k;
    geom.Ly = Ly;
    geom.Lx = Ly;
    geom.a1 = a1a2;
    geom.a2 = 1.0;
    const double g_s = response::g_scattering(k, L, material, spec).value;
    const double g_p = response::g_scattering(k, L, Material::perfect(), spec).value;
    const TorqueResult s = torque_max(geom, g_s, Method::Scattering);
    row.tau_scattering = s.torque_per_area;
    row.theta_star = s.theta_at;
    row.tau_pfa = torque_max(geom, g_pfa, Method::PFA).torque_per_area;
    row.tau_perfect = torque_max(geom, g_p, Method::PerfectScattering).torque_per_area;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_k(double L, const Material& material, const std::vector<double>& k_grid, double a1a2,
                              double Ly, const QuadratureSpec& spec, int workers) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0) || (i > 0 && !(k_grid[i] > k_grid[i - 1]))) {
      throw std::invalid_argument("sweep_k: k grid must be positive and strictly increasing");
    }
  }
  const double g_pfa = response::g_pfa(0.0, L, material, spec).value;
  std::vector<SweepRow> rows(k_grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < k_grid.size(); ++i) rows[i] = sweep_row(k_grid[i], L, material, g_pfa, a1a2, Ly, spec);
    return rows;
  }
  // Rows are independent; each lands in its own slot so output order and
  // values do not depend on the worker count.
  std::vector<std::future<void>> pending;
  const std::size_t n = k_grid.size();
  const std::size_t stride = static_cast<std::size_t>(workers);
  for (std::size_t w = 0; w < stride; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += stride) rows[i] = sweep_row(k_grid[i], L, material, g_pfa, a1a2, Ly, spec);
    }));
  }
  for (auto& f : pending) f.get();
  return rows;
}

}  // namespace casimir::observables
