#include "casimir/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace casimir {

double Material::plasma_frequency() const {
  if (kind != MaterialKind::PlasmaModel) {
    throw std::invalid_argument("perfect mirrors have no plasma frequency");
  }
  return 2.0 * kPi * PhysicalConstants::c / lambdaP;
}

double Material::plasma_wavenumber() const {
  return plasma_frequency() / PhysicalConstants::c;
}

std::string to_string(const Material& m) {
  if (m.is_perfect()) return "perfect";
  std::ostringstream os;
  os << "plasma(lambda_P=" << m.lambdaP << " m)";
  return os.str();
}

namespace {

void require_positive(double value, const char* what, std::vector<std::string>& errors) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    errors.push_back(std::string("non-positive ") + what);
  }
}

std::string ratio_note(const char* what, double ratio, double limit) {
  std::ostringstream os;
  os << what << " ratio " << ratio << " exceeds " << limit;
  return os.str();
}

}  // namespace

ValidationReport validate(const Geometry& g, const Material& material,
                          const ValidityThresholds& t) {
  ValidationReport report;
  require_positive(g.L, "separation", report.errors);
  require_positive(g.Lx, "plate length Lx", report.errors);
  require_positive(g.Ly, "plate length Ly", report.errors);
  require_positive(g.lambdaC, "corrugation period", report.errors);
  if (!(g.a1 >= 0.0) || !std::isfinite(g.a1)) report.errors.push_back("negative amplitude a1");
  if (!(g.a2 >= 0.0) || !std::isfinite(g.a2)) report.errors.push_back("negative amplitude a2");
  if (!std::isfinite(g.b)) report.errors.push_back("non-finite lateral offset");
  if (!std::isfinite(g.theta)) report.errors.push_back("non-finite rotation angle");
  if (material.kind == MaterialKind::PlasmaModel) {
    require_positive(material.lambdaP, "plasma wavelength", report.errors);
  }
  if (!report.errors.empty()) return report;

  const double scale = std::min(g.L, g.lambdaC);
  if (g.a1 > t.amplitude_fraction * scale) {
    report.warnings.push_back(ratio_note("a1/min(L, lambda_C)", g.a1 / scale, t.amplitude_fraction));
  }
  if (g.a2 > t.amplitude_fraction * scale) {
    report.warnings.push_back(ratio_note("a2/min(L, lambda_C)", g.a2 / scale, t.amplitude_fraction));
  }
  if (g.Lx < t.scale_separation * g.lambdaC) {
    report.warnings.push_back(ratio_note("lambda_C/Lx", g.lambdaC / g.Lx, 1.0 / t.scale_separation));
  }
  if (g.Ly < t.scale_separation * g.lambdaC) {
    report.warnings.push_back(ratio_note("lambda_C/Ly", g.lambdaC / g.Ly, 1.0 / t.scale_separation));
  }
  return report;
}

void require_valid(const Geometry& geometry, const Material& material) {
  const auto report = validate(geometry, material);
  if (report.ok()) return;
  std::string msg = "invalid geometry:";
  for (const auto& e : report.errors) msg += " " + e + ";";
  throw std::invalid_argument(msg);
}

double corrugation_wavenumber(double lambdaC) {
  if (!(lambdaC > 0.0)) throw std::invalid_argument("non-positive corrugation period");
  return 2.0 * kPi / lambdaC;
}

double sinc(double x) {
  if (std::abs(x) < kSincSeriesThreshold) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sinc_derivative(double x) {
  if (std::abs(x) < kSincDerivativeSeriesThreshold) {
    const double x2 = x * x;
    return -x / 3.0 + x * x2 / 30.0;
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}

}  // namespace casimir
