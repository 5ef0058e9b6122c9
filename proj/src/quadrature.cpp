#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>
#include <vector>

#include "casimir/model.hpp"

namespace casimir {

void QuadratureSpec::check() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature: rel_tol or abs_tol must be positive");
  }
  if (rel_tol < 0.0 || abs_tol < 0.0) throw std::invalid_argument("quadrature: negative tolerance");
  if (max_subdivisions < 1) throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
  if (!(transform_scale > 0.0)) throw std::invalid_argument("quadrature: transform_scale must be positive");
  if (azimuthal_order < 0 || max_azimuthal_order < 8) {
    throw std::invalid_argument("quadrature: bad azimuthal order");
  }
}

namespace {

std::string describe(const std::string& where, double x) {
  std::ostringstream os;
  os << "non-finite integrand value in " << where << " at x = " << x;
  return os.str();
}

}  // namespace

EvaluationFailure::EvaluationFailure(const std::string& where, double abscissa)
    : std::runtime_error(describe(where, abscissa)), abscissa_(abscissa) {}

namespace {

// Kronrod abscissae on [0, 1] of the half-interval; odd indices are Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Value at a node plus any error already accumulated while computing it.
struct NodeValue {
  double value;
  double error;
  long evaluations;
  bool converged;
};

using NodeFunction = std::function<NodeValue(double)>;

struct Panel {
  double a, b;
  double result, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

struct PanelStats {
  long evaluations = 0;
  bool converged = true;
};

Panel gauss_kronrod(const NodeFunction& f, double a, double b, PanelStats& stats) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  double inner_error = 0.0;
  auto eval = [&](double x) {
    NodeValue nv = f(x);
    stats.evaluations += nv.evaluations;
    stats.converged = stats.converged && nv.converged;
    return nv;
  };

  double res_k = 0.0, res_g = 0.0, res_abs = 0.0;
  std::array<double, 15> weights{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    NodeValue lo = eval(center - dx);
    NodeValue hi = eval(center + dx);
    fv[2 * j] = lo.value;
    fv[2 * j + 1] = hi.value;
    weights[2 * j] = weights[2 * j + 1] = kWgk[j];
    res_k += kWgk[j] * (lo.value + hi.value);
    res_abs += kWgk[j] * (std::abs(lo.value) + std::abs(hi.value));
    inner_error += kWgk[j] * (lo.error + hi.error);
    if (j % 2 == 1) res_g += kWg[j / 2] * (lo.value + hi.value);
  }
  NodeValue mid = eval(center);
  fv[14] = mid.value;
  weights[14] = kWgk[7];
  res_k += kWgk[7] * mid.value;
  res_abs += kWgk[7] * std::abs(mid.value);
  res_g += kWg[3] * mid.value;
  inner_error += kWgk[7] * mid.error;

  const double mean = 0.5 * res_k;
  double res_asc = 0.0;
  for (int i = 0; i < 15; ++i) res_asc += weights[i] * std::abs(fv[i] - mean);

  res_k *= half;
  res_g *= half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);

  double err = std::abs(res_k - res_g);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  err += std::abs(half) * inner_error;
  return {a, b, res_k, err};
}

IntegralResult adaptive(const NodeFunction& f, double a, double b, const QuadratureSpec& spec) {
  spec.check();
  PanelStats stats;
  std::priority_queue<Panel> queue;
  constexpr int kInitialPanels = 4;
  for (int i = 0; i < kInitialPanels; ++i) {
    const double lo = a + (b - a) * i / kInitialPanels;
    const double hi = a + (b - a) * (i + 1) / kInitialPanels;
    queue.push(gauss_kronrod(f, lo, hi, stats));
  }

  auto totals = [&queue]() {
    double value = 0.0, error = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      value += copy.top().result;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  double value = 0.0, error = 0.0;
  std::tie(value, error) = totals();

  int subdivisions = 0;
  bool converged = false;
  while (true) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (error <= tol) {
      converged = true;
      break;
    }
    if (subdivisions >= spec.max_subdivisions) break;
    Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at double precision
    queue.pop();
    Panel left = gauss_kronrod(f, worst.a, mid, stats);
    Panel right = gauss_kronrod(f, mid, worst.b, stats);
    value += left.result + right.result - worst.result;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
    if (subdivisions % 64 == 0) std::tie(value, error) = totals();  // limit drift
  }

  // Final sum in interval order for reproducibility.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  IntegralResult out;
  for (const auto& p : panels) {
    out.value += p.result;
    out.error_estimate += p.error;
  }
  out.evaluations = stats.evaluations;
  out.converged = converged && stats.converged;
  return out;
}

NodeValue checked(double value, const char* where, double x) {
  if (!std::isfinite(value)) throw EvaluationFailure(where, x);
  return {value, 0.0, 1, true};
}

}  // namespace

IntegralResult integrate_interval(const Integrand1D& f, double a, double b, const QuadratureSpec& spec) {
  return adaptive([&f](double x) { return checked(f(x), "integrate_interval", x); }, a, b, spec);
}

namespace {

// x = s u / (1 - u), dx = s / (1 - u)^2 du
template <typename Eval>
NodeValue transformed(double u, double scale, Eval&& eval) {
  const double one_minus = 1.0 - u;
  const double x = scale * u / one_minus;
  const double jac = scale / (one_minus * one_minus);
  NodeValue nv = eval(x);
  if (nv.value == 0.0 && nv.error == 0.0) return nv;  // avoids inf * 0 at the far end
  nv.value *= jac;
  nv.error *= jac;
  return nv;
}

}  // namespace

IntegralResult integrate_half_line(const Integrand1D& f, const QuadratureSpec& spec) {
  const double scale = spec.transform_scale;
  return adaptive(
      [&](double u) {
        return transformed(u, scale, [&](double x) { return checked(f(x), "integrate_half_line", x); });
      },
      0.0, 1.0, spec);
}

IntegralResult integrate_half_line_nested(const NestedIntegrand& f, const QuadratureSpec& spec) {
  const double scale = spec.transform_scale;
  return adaptive(
      [&](double u) {
        return transformed(u, scale, [&](double x) {
          IntegralResult inner = f(x);
          if (!std::isfinite(inner.value)) throw EvaluationFailure("integrate_half_line_nested", x);
          return NodeValue{inner.value, inner.error_estimate, inner.evaluations, inner.converged};
        });
      },
      0.0, 1.0, spec);
}

IntegralResult integrate_periodic(const Integrand1D& f, const QuadratureSpec& spec) {
  spec.check();
  const double period = 2.0 * kPi;
  auto eval = [&f](double phi) {
    const double v = f(phi);
    if (!std::isfinite(v)) throw EvaluationFailure("integrate_periodic", phi);
    return v;
  };

  IntegralResult out;
  if (spec.azimuthal_order > 0) {
    const int n = spec.azimuthal_order;
    double sum = 0.0, half_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = eval(period * j / n);
      sum += v;
      if (j % 2 == 0) half_sum += v;
    }
    out.value = period * sum / n;
    out.evaluations = n;
    out.error_estimate = n % 2 == 0 ? std::abs(out.value - 2.0 * period * half_sum / n) : 0.0;
    out.converged = true;
    return out;
  }

  int n = 8;
  double sum = 0.0, abs_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = eval(period * j / n);
    sum += v;
    abs_sum += std::abs(v);
  }
  double estimate = period * sum / n;
  out.evaluations = n;
  while (true) {
    double added = 0.0, added_abs = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = eval(period * (2 * j + 1) / (2.0 * n));
      added += v;
      added_abs += std::abs(v);
    }
    out.evaluations += n;
    sum += added;
    abs_sum += added_abs;
    n *= 2;
    const double refined = period * sum / n;
    const double scale = std::max(std::abs(refined), period * abs_sum / n);
    const double diff = std::abs(refined - estimate);
    estimate = refined;
    if (diff <= std::max(spec.abs_tol, spec.rel_tol * scale)) {
      out.converged = true;
      out.error_estimate = diff;
      break;
    }
    if (2 * n > spec.max_azimuthal_order) {
      out.error_estimate = diff;
      break;
    }
  }
  out.value = estimate;
  return out;
}

IntegralResult integrate_plane_polar(const IntegrandPolar& f, const QuadratureSpec& spec) {
  QuadratureSpec ring = spec;
  ring.rel_tol = 0.1 * spec.rel_tol;
  ring.abs_tol = 0.0;
  return integrate_half_line_nested(
      [&](double r) {
        IntegralResult inner = integrate_periodic([&](double phi) { return f(r, phi); }, ring);
        inner.value *= r;
        inner.error_estimate *= r;
        // A ring that hit the order cap still carries its difference estimate
        // into the radial error, which decides convergence.
        inner.converged = true;
        return inner;
      },
      spec);
}

}  // namespace casimir
