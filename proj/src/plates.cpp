#include "casimir/plates.hpp"

#include "casimir/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace casimir::plates {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const PlatesGeometry& geom, const Polarizability& alpha) {
  validate(geom);
  validate(alpha);
}

// zeta(4, 1 + Z/a) + zeta(4, 2 - Z/a)
double image_sum(double zeta) {
  return specfun::hurwitz_zeta(4, 1 + zeta) + specfun::hurwitz_zeta(4, 2 - zeta);
}

double total_exact(double zeta, const Polarizability& alpha) {
  const double three = (alpha.transverse() - alpha.azz) / (4 * kPi) * specfun::riemann_zeta(4) -
                       alpha.trace() / (8 * kPi) * image_sum(zeta);
  const double two = -alpha.trace() / (8 * kPi) * (std::pow(zeta, -4) + std::pow(1 - zeta, -4));
  return two + three;
}

} // namespace

TwoBody cp_two_body(const PlatesGeometry& geom, const Polarizability& alpha) {
  check(geom, alpha);
  const double zeta = geom.z_over_a();
  const double pref = -alpha.trace() / (8 * kPi);
  return {pref * std::pow(zeta, -4), pref * std::pow(1 - zeta, -4)};
}

double cp_three_body_exact(const PlatesGeometry& geom, const Polarizability& alpha) {
  check(geom, alpha);
  return (alpha.transverse() - alpha.azz) / (4 * kPi) * specfun::riemann_zeta(4) -
         alpha.trace() / (8 * kPi) * image_sum(geom.z_over_a());
}

ThreeBodyIntegral cp_three_body_integral(const PlatesGeometry& geom, const Polarizability& alpha,
                                         const quad::QuadConfig& cfg) {
  check(geom, alpha);
  const double zeta = geom.z_over_a();
  // u = kappa a. Both brackets share the weight u^3 / (e^{2u} - 1).
  const auto weight = [](double u) { return u * u * u / std::expm1(2 * u); };
  const auto minus_two = [&](double u) {
    return weight(u) * (std::expm1(-2 * u * zeta) + std::expm1(-2 * u * (1 - zeta)));
  };
  const auto plus_two = [&](double u) {
    return weight(u) * (std::exp(-2 * u * zeta) + std::exp(-2 * u * (1 - zeta)) + 2);
  };

  ThreeBodyIntegral out{};
  const quad::Result bm = quad::integrate_semi_infinite(minus_two, cfg);
  out.report.merge(bm.report);
  double bp = 0.0;
  if (alpha.azz != 0.0) {
    const quad::Result r = quad::integrate_semi_infinite(plus_two, cfg);
    out.report.merge(r.report);
    bp = r.value;
  }
  out.te = -alpha.transverse() / (12 * kPi) * bm.value;
  out.tm = -1 / (2 * kPi) * (alpha.transverse() / 2 * bm.value + 2.0 / 3.0 * alpha.azz * bp);
  return out;
}

Truncation scattering_truncation(const PlatesGeometry& geom, const Polarizability& alpha) {
  check(geom, alpha);
  const double zeta = geom.z_over_a();
  return {(alpha.transverse() - alpha.azz) / (4 * kPi),
          -alpha.trace() / (8 * kPi) * (std::pow(1 + zeta, -4) + std::pow(2 - zeta, -4))};
}

double three_body_ratio(const PlatesGeometry& geom, const Polarizability& alpha) {
  const TwoBody two = cp_two_body(geom, alpha);
  const double three = cp_three_body_exact(geom, alpha);
  return three / (two.e12 + two.e13 + three);
}

double force(const PlatesGeometry& geom, const Polarizability& alpha) {
  check(geom, alpha);
  const double zeta = geom.z_over_a();
  const double h = std::min({1e-4, zeta / 2, (1 - zeta) / 2});
  return -(total_exact(zeta + h, alpha) - total_exact(zeta - h, alpha)) / (2 * h);
}

EnergyBreakdown breakdown(const PlatesGeometry& geom, const Polarizability& alpha,
                          const quad::QuadConfig& cfg, ConvergenceReport* report) {
  const TwoBody two = cp_two_body(geom, alpha);
  const Truncation trunc = scattering_truncation(geom, alpha);
  EnergyBreakdown out;
  out.units = EnergyUnits::AlphaOverA4;
  out.e12 = two.e12;
  out.e13 = two.e13;
  out.e123_total = cp_three_body_exact(geom, alpha);
  out.e3scatter = trunc.e3;
  out.e4scatter = trunc.e4;
  const ThreeBodyIntegral integral = cp_three_body_integral(geom, alpha, cfg);
  out.te_part = integral.te;
  out.tm_part = integral.tm;
  if (report) report->merge(integral.report);
  return out;
}

} // namespace casimir::plates
