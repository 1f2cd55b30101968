#pragma once

// Shared value types for the Casimir-Polder calculators.
//
// Natural units (hbar = c = 1) throughout. Polarizabilities carry units of
// length^3, so an energy has units of 1/length. Angles are radians.

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace casimir {

/// Raised when an input violates a geometric or physical invariant.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when a special function result is not representable as a double.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

struct ConvergenceReport {
  double quad_abs_err_estimate = 0.0;
  int modes_used = 0;
  double tail_bound = 0.0;
  bool converged = true;
  std::vector<std::string> warnings;

  /// Folds another report into this one (errors add, modes take the max).
  void merge(const ConvergenceReport& other);
};

/// Numerical procedure failed to reach its tolerance. Carries the best value
/// found so callers can still emit a flagged partial result.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double value, ConvergenceReport report)
      : std::runtime_error(what), value_(value), report_(std::move(report)) {}

  double value() const noexcept { return value_; }
  const ConvergenceReport& report() const noexcept { return report_; }

private:
  double value_;
  ConvergenceReport report_;
};

/// Static diagonal polarizability tensor.
struct Polarizability {
  double axx = 0.0;
  double ayy = 0.0;
  double azz = 0.0;

  static constexpr Polarizability isotropic(double a) { return {a, a, a}; }

  constexpr double trace() const { return axx + ayy + azz; }
  constexpr double transverse() const { return axx + ayy; }
};

/// Plates at z = 0 and z = a, atom at height z.
struct PlatesGeometry {
  double a = 1.0;
  double z = 0.5;

  constexpr double z_over_a() const { return z / a; }
};

/// Exterior of a wedge with interior opening angle beta. The atom sits at
/// polar radius r and angle phi measured from the wedge's symmetry plane.
class WedgeGeometry {
public:
  static WedgeGeometry from_beta(double beta, double r, double phi);
  static WedgeGeometry from_p(double p, double r, double phi);
  /// Same, with the atom angle given relative to the upper face (phi - beta/2).
  static WedgeGeometry from_beta_face(double beta, double r, double phi_face);
  static WedgeGeometry from_p_face(double p, double r, double phi_face);

  double beta() const { return beta_; }
  double p() const { return p_; }
  double r() const { return r_; }
  double phi() const { return phi_; }
  /// Angle from the upper wedge face, phi - beta/2.
  double phi_face() const { return phi_ - beta_ / 2; }

  static double p_of_beta(double beta) { return std::numbers::pi / (2 * std::numbers::pi - beta); }
  static double beta_of_p(double p) { return 2 * std::numbers::pi - std::numbers::pi / p; }

private:
  WedgeGeometry(double beta, double p, double r, double phi)
      : beta_(beta), p_(p), r_(r), phi_(phi) {}

  double beta_;
  double p_;
  double r_;
  double phi_;
};

/// Two parallel cylinders of radius a whose axes are 2*r0 apart. The atom is
/// on the bisecting line at height y above the plane of the axes, a distance
/// R = sqrt(r0^2 + y^2) from either axis; cos(theta) = y/R.
class CylinderPairGeometry {
public:
  static CylinderPairGeometry from_theta(double a, double r0, double theta);
  static CylinderPairGeometry from_height(double a, double r0, double y);
  /// phi_tilde = pi/2 - theta, the angle between the axis line and the atom.
  static CylinderPairGeometry from_phi_tilde(double a, double r0, double phi_tilde);

  double a() const { return a_; }
  double r0() const { return r0_; }
  double theta() const { return theta_; }
  double a_over_r0() const { return a_ / r0_; }
  double r() const;
  double y() const;
  double phi_tilde() const { return std::numbers::pi / 2 - theta_; }

private:
  CylinderPairGeometry(double a, double r0, double theta) : a_(a), r0_(r0), theta_(theta) {}

  double a_;
  double r0_;
  double theta_;
};

/// Declared dimensionless energy scale of each geometry module.
enum class EnergyUnits {
  AlphaOverA4,      // plates: alpha_ref / a^4 with alpha_ref = 1
  AlphaOver4PiR0_4, // cylinders: alpha_yy / (4 pi R0^4)
  AlphaOver8PiR2,   // scalar wedge: alpha / (8 pi R^2)
};

std::string_view to_string(EnergyUnits units);

struct EnergyBreakdown {
  double e12 = 0.0;
  double e13 = 0.0;
  double e3scatter = 0.0;
  double e4scatter = 0.0;
  double e123_total = 0.0;
  double te_part = 0.0;
  double tm_part = 0.0;
  EnergyUnits units = EnergyUnits::AlphaOverA4;

  double two_body() const { return e12 + e13; }
  double total() const { return e12 + e13 + e123_total; }
};

void validate(const Polarizability& alpha);
void validate(const PlatesGeometry& geom);
void validate(const WedgeGeometry& geom);
void validate(const CylinderPairGeometry& geom);

} // namespace casimir
