#include "casimir/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(std::string_view what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

} // namespace

void ConvergenceReport::merge(const ConvergenceReport& other) {
  quad_abs_err_estimate += other.quad_abs_err_estimate;
  modes_used = std::max(modes_used, other.modes_used);
  tail_bound += other.tail_bound;
  converged = converged && other.converged;
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

std::string_view to_string(EnergyUnits units) {
  switch (units) {
  case EnergyUnits::AlphaOverA4: return "alpha/a^4";
  case EnergyUnits::AlphaOver4PiR0_4: return "alpha_yy/(4 pi R0^4)";
  case EnergyUnits::AlphaOver8PiR2: return "alpha/(8 pi R^2)";
  }
  return "unknown";
}

WedgeGeometry WedgeGeometry::from_beta(double beta, double r, double phi) {
  return WedgeGeometry(beta, p_of_beta(beta), r, phi);
}

WedgeGeometry WedgeGeometry::from_p(double p, double r, double phi) {
  return WedgeGeometry(beta_of_p(p), p, r, phi);
}

WedgeGeometry WedgeGeometry::from_beta_face(double beta, double r, double phi_face) {
  return from_beta(beta, r, phi_face + beta / 2);
}

WedgeGeometry WedgeGeometry::from_p_face(double p, double r, double phi_face) {
  const double beta = beta_of_p(p);
  return WedgeGeometry(beta, p, r, phi_face + beta / 2);
}

CylinderPairGeometry CylinderPairGeometry::from_theta(double a, double r0, double theta) {
  return CylinderPairGeometry(a, r0, theta);
}

CylinderPairGeometry CylinderPairGeometry::from_height(double a, double r0, double y) {
  return CylinderPairGeometry(a, r0, std::atan2(r0, y));
}

CylinderPairGeometry CylinderPairGeometry::from_phi_tilde(double a, double r0, double phi_tilde) {
  return CylinderPairGeometry(a, r0, kPi / 2 - phi_tilde);
}

double CylinderPairGeometry::r() const { return r0_ / std::sin(theta_); }

double CylinderPairGeometry::y() const { return r() * std::cos(theta_); }

void validate(const Polarizability& alpha) {
  for (double c : {alpha.axx, alpha.ayy, alpha.azz}) {
    if (!std::isfinite(c) || c < 0)
      throw DomainError(describe("polarizability components must be finite and >= 0", c));
  }
}

void validate(const PlatesGeometry& geom) {
  if (!std::isfinite(geom.a) || geom.a <= 0)
    throw DomainError(describe("plate separation a must be > 0", geom.a));
  if (!std::isfinite(geom.z) || geom.z <= 0 || geom.z >= geom.a)
    throw DomainError(describe("atom must lie strictly between the plates, 0 < Z < a", geom.z));
}

void validate(const WedgeGeometry& geom) {
  if (!std::isfinite(geom.beta()) || geom.beta() < 0 || geom.beta() > kPi)
    throw DomainError(describe("wedge opening angle beta must lie in [0, pi] (p in [1/2, 1])",
                               geom.beta()));
  if (!std::isfinite(geom.r()) || geom.r() <= 0)
    throw DomainError(describe("atom radial distance R must be > 0", geom.r()));
  const double half = geom.beta() / 2;
  if (!(geom.phi() > half && geom.phi() < 2 * kPi - half))
    throw DomainError(describe("atom must lie strictly outside the wedge, beta/2 < phi < 2 pi - beta/2",
                               geom.phi()));
}

void validate(const CylinderPairGeometry& geom) {
  if (!std::isfinite(geom.a()) || geom.a() <= 0)
    throw DomainError(describe("cylinder radius a must be > 0", geom.a()));
  if (!std::isfinite(geom.r0()) || geom.r0() <= geom.a())
    throw DomainError(describe("half axis separation R0 must exceed the radius a", geom.r0()));
  if (!std::isfinite(geom.theta()) || geom.theta() <= 0 || geom.theta() >= kPi)
    throw DomainError(describe("angle theta must lie in (0, pi)", geom.theta()));
}

} // namespace casimir
