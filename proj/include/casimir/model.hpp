#pragma once

#include <string>
#include <vector>

namespace casimir {

/// CODATA 2018 values, SI.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;  // J s
  static constexpr double c = 299792458.0;         // m/s
};

inline constexpr double kPi = 3.14159265358979323846;

/// Two parallel plates with sinusoidal corrugations of a common period.
/// All lengths in metres, theta in radians.
struct Geometry {
  double L = 0.0;        // mean separation
  double Lx = 0.0;
  double Ly = 0.0;       // length along the corrugation lines
  double a1 = 0.0;
  double a2 = 0.0;
  double lambdaC = 0.0;  // corrugation period
  double b = 0.0;        // lateral offset of the top plate along x
  double theta = 0.0;    // rotation angle

  double amplitude_product() const { return a1 * a2; }
};

enum class MaterialKind { PerfectMirror, PlasmaModel };

struct Material {
  MaterialKind kind = MaterialKind::PerfectMirror;
  double lambdaP = 0.0;  // plasma wavelength; only meaningful for PlasmaModel

  static Material perfect() { return {}; }
  static Material plasma(double lambda_p) { return {MaterialKind::PlasmaModel, lambda_p}; }

  bool is_perfect() const { return kind == MaterialKind::PerfectMirror; }
  /// omega_P = 2 pi c / lambda_P (rad/s). Throws for perfect mirrors.
  double plasma_frequency() const;
  /// omega_P / c (rad/m).
  double plasma_wavenumber() const;
};

std::string to_string(const Material& m);

/// Thresholds turning the perturbative "much smaller than" assumptions
/// into numbers. Breaches are warnings only.
struct ValidityThresholds {
  double amplitude_fraction = 0.15;  // a_i <= v min(L, lambdaC)
  double scale_separation = 10.0;    // Lx, Ly >= s lambdaC
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Geometry& geometry, const Material& material,
                          const ValidityThresholds& thresholds = {});

/// Throws std::invalid_argument with the joined error list if validation fails.
void require_valid(const Geometry& geometry, const Material& material);

/// k = 2 pi / lambdaC.
double corrugation_wavenumber(double lambdaC);

/// sin(x)/x, with the removable singularity handled by a series.
double sinc(double x);

/// d/dx sinc(x) = (x cos x - sin x) / x^2.
double sinc_derivative(double x);

/// Below these |x| the series branches are used.
inline constexpr double kSincSeriesThreshold = 1e-4;
inline constexpr double kSincDerivativeSeriesThreshold = 1e-3;

}  // namespace casimir
