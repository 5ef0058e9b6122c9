#pragma once

#include <cmath>
#include <functional>

namespace casimir {

struct GoldenResult {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for the maximum of a unimodal f on [a, b]. Stops
/// once the bracket is narrower than `tol`.
inline GoldenResult golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                            double tol, int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  for (int i = 0; i < max_iterations; ++i) {
    if (std::abs(b - a) <= tol) break;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc > fd ? GoldenResult{c, fc, evaluations} : GoldenResult{d, fd, evaluations};
}

}  // namespace casimir
