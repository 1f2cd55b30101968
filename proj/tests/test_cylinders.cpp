#include "casimir/cylinders.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace casimir;
using namespace casimir::cylinders;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Composite Simpson on x = e^u with 10^5 + 1 nodes: log-spaced near 0, where
// the K0 factors are logarithmically singular.
double simpson_oracle(const std::function<double(double)>& f) {
  const int n = 100000;
  const double lo = std::log(1e-14), hi = std::log(80.0);
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = std::exp(lo + i * h);
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * f(x) * x;
  }
  return sum * h / 3;
}

// libstdc++ Bessel functions, independent of the library's implementation.
double i0(double x) { return std::cyl_bessel_i(0.0, x); }
double k0(double x) { return x > 700 ? 0.0 : std::cyl_bessel_k(0.0, x); }
double k1(double x) { return x > 700 ? 0.0 : std::cyl_bessel_k(1.0, x); }
double i1(double x) { return std::cyl_bessel_i(1.0, x); }

struct Spot {
  double a_over_r0, theta;
};

double tm0_oracle(const Spot& s) {
  const double sn = std::sin(s.theta), cs = std::cos(s.theta), c = s.a_over_r0 * sn;
  return -std::pow(sn, 4) * simpson_oracle([&](double x) {
    const double kp = -k1(x);
    return x * i0(c * x) / k0(c * x) * x * x * kp * kp * cs * cs;
  });
}

double te0_oracle(const Spot& s) {
  const double sn = std::sin(s.theta), c = s.a_over_r0 * sn;
  return std::pow(sn, 4) * simpson_oracle([&](double x) {
    const double kp = -k1(x);
    return x * i1(c * x) / (-k1(c * x)) * x * x * kp * kp * sn * sn;
  });
}

double tm1_oracle(const Spot& s) {
  const double sn = std::sin(s.theta), cs = std::cos(s.theta), c = s.a_over_r0 * sn;
  return -std::pow(sn, 4) * simpson_oracle([&](double x) {
    const double k = k1(x), kp = -k0(x) - k1(x) / x;
    return x * i1(c * x) / k1(c * x) * (k * k * sn * sn + x * x * kp * kp * cs * cs);
  });
}

double three_oracle(const Spot& s, int pw, int pk, double sign) {
  const double sn = std::sin(s.theta), cs = std::cos(s.theta), c = s.a_over_r0 * sn;
  return sign * cs * cs * std::pow(sn, 4) * simpson_oracle([&](double x) {
    const double kp = -k1(x);
    return x * x * x * std::pow(k0(2 * x * sn), pw) * i0(c * x) / std::pow(k0(c * x), pk) * kp * kp;
  });
}

CylinderPairGeometry geom(const Spot& s) { return CylinderPairGeometry::from_theta(s.a_over_r0, 1.0, s.theta); }

} // namespace

TEST_CASE("single-mode integrals against the Simpson oracle") {
  const Spot quarter{0.01, kPi / 4};
  CHECK(rel(two_body_tm_mode(geom(quarter), 0).value, tm0_oracle(quarter)) < 1e-6);
  CHECK(rel(two_body_tm_mode(geom({0.05, 1.0}), 1).value, tm1_oracle({0.05, 1.0})) < 1e-6);
  CHECK(rel(two_body_te_mode(geom({0.01, kPi / 2}), 0).value, te0_oracle({0.01, kPi / 2})) < 1e-6);
  CHECK(rel(three_scattering_tm(geom(quarter)).value, three_oracle(quarter, 1, 2, 1)) < 1e-6);
  CHECK(rel(four_scattering_tm(geom(quarter)).value, three_oracle(quarter, 2, 3, -1)) < 1e-6);
  const Spot steep{0.03, 0.4};
  CHECK(rel(three_scattering_tm(geom(steep)).value, three_oracle(steep, 1, 2, 1)) < 1e-6);
}

TEST_CASE("two-body TM structure") {
  // At theta = pi/2 the m = 0 TM bracket vanishes identically.
  CHECK(two_body_tm_mode(geom({0.01, kPi / 2}), 0).value == 0.0);
  const CylinderPairGeometry g = geom({0.01, kPi / 4});
  const double m0 = two_body_tm_mode(g, 0).value;
  const double m1_pair = 2 * two_body_tm_mode(g, 1).value;
  CHECK(m0 < 0);
  CHECK(std::abs(m0 - (-0.016891)) < 1e-6);
  CHECK(std::abs(m1_pair) / std::abs(m0) <= 0.05);
  // I0/K0 at the surface vanishes only like 1/ln(R0/a).
  double previous = std::abs(two_body_tm(g).value);
  const double first = previous;
  for (double ratio : {1e-4, 1e-8, 1e-50, 1e-100}) {
    const double v = std::abs(two_body_tm(geom({ratio, kPi / 4})).value);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(previous < 0.05 * first);
}

TEST_CASE("two-body TE is attractive and small at large separation") {
  for (double ratio : {0.002, 0.01, 0.1, 0.3}) {
    for (double theta : {0.3, kPi / 4, 1.2, kPi / 2}) {
      CHECK(two_body_te(geom({ratio, theta})).value < 0);
    }
  }
  const CylinderPairGeometry g = CylinderPairGeometry::from_phi_tilde(0.01, 1, kPi / 4);
  const double te = two_body_te(g).value, tm = two_body_tm(g).value;
  CHECK(std::abs(te) <= 0.01 * std::abs(tm));
  // TE vanishes faster than TM as a -> 0.
  double previous = 1e300;
  for (double ratio : {0.05, 0.01, 0.002}) {
    const CylinderPairGeometry gr = geom({ratio, kPi / 4});
    const double r = two_body_te(gr).value / two_body_tm(gr).value;
    CHECK(r < previous);
    previous = r;
  }
}

TEST_CASE("three- and four-scattering terms") {
  CHECK(three_scattering_tm(geom({0.01, kPi / 2})).value == 0.0);
  CHECK(four_scattering_tm(geom({0.01, kPi / 2})).value == 0.0);
  for (double pt = 0.05; pt < kPi / 2; pt += 0.1) {
    const CylinderPairGeometry g = CylinderPairGeometry::from_phi_tilde(0.01, 1, pt);
    const double e3 = three_scattering_tm(g).value, e4 = four_scattering_tm(g).value;
    CHECK(e3 > 0);
    CHECK(e4 < 0);
    CHECK(std::abs(e4) < std::abs(e3));
  }
  double previous = 1e300;
  for (double ratio : {0.05, 0.01, 0.002}) {
    const CylinderPairGeometry g = geom({ratio, kPi / 4});
    const double r = std::abs(four_scattering_tm(g).value / three_scattering_tm(g).value);
    CHECK(r < previous);
    previous = r;
  }
}

TEST_CASE("evenness in y and scale invariance") {
  for (double theta : {0.4, 1.1}) {
    const CylinderPairGeometry up = geom({0.02, theta}), down = geom({0.02, kPi - theta});
    CHECK(rel(two_body_tm(up).value, two_body_tm(down).value) < 1e-12);
    CHECK(rel(two_body_te(up).value, two_body_te(down).value) < 1e-12);
    CHECK(rel(three_scattering_tm(up).value, three_scattering_tm(down).value) < 1e-12);
    CHECK(rel(four_scattering_tm(up).value, four_scattering_tm(down).value) < 1e-12);
  }
  const CylinderPairGeometry unit = CylinderPairGeometry::from_height(0.01, 1, 0.7);
  for (double lambda : {3.0, 250.0}) {
    const CylinderPairGeometry big = CylinderPairGeometry::from_height(0.01 * lambda, lambda, 0.7 * lambda);
    CHECK(rel(big.r(), lambda * unit.r()) < 1e-14);
    const EnergyBreakdown a = total_energy(unit), b = total_energy(big);
    CHECK(rel(a.total(), b.total()) < 1e-12);
    CHECK(rel(a.e3scatter, b.e3scatter) < 1e-12);
  }
}

TEST_CASE("total energy assembly and ordering") {
  const CylinderPairGeometry g = CylinderPairGeometry::from_phi_tilde(0.01, 1, 0.6);
  ConvergenceReport report;
  const EnergyBreakdown b = total_energy(g, default_mode_config(), {}, &report);
  CHECK(b.units == EnergyUnits::AlphaOver4PiR0_4);
  CHECK(rel(b.two_body(), two_body_tm(g).value + two_body_te(g).value) < 1e-14);
  CHECK(rel(b.e3scatter, 2 * three_scattering_tm(g).value) < 1e-14);
  CHECK(rel(b.e123_total, b.e3scatter + b.e4scatter) < 1e-14);
  CHECK(b.two_body() < b.total());
  CHECK(b.total() < b.e4scatter);
  CHECK(b.e4scatter <= 0);
  CHECK(0 <= b.e3scatter);
  CHECK(report.converged);
  CHECK(report.modes_used >= 3);
  const EnergyBreakdown flat = total_energy(geom({0.01, kPi / 2}));
  CHECK(flat.e123_total == 0.0);
  CHECK(flat.total() == flat.two_body());
}

TEST_CASE("regime guard") {
  CHECK_THROWS_AS(three_scattering_tm(geom({0.5, 1.0})), DomainError);
  CHECK_THROWS_AS(total_energy(geom({0.2, 1.0})), DomainError);
  CHECK_NOTHROW(two_body_tm(geom({0.5, 1.0})));
  CHECK_FALSE(three_scattering_tm(geom({0.08, 1.0})).report.warnings.empty());
  CHECK(three_scattering_tm(geom({0.01, 1.0})).report.warnings.empty());
  CHECK_THROWS_AS(validate(CylinderPairGeometry::from_theta(1, 0.5, 1)), DomainError);
  CHECK_THROWS_AS(validate(CylinderPairGeometry::from_theta(0.1, 1, 0)), DomainError);
  CHECK(rel(CylinderPairGeometry::from_height(0.1, 1, 0.5).r(),
            CylinderPairGeometry::from_theta(0.1, 1, std::atan2(1, 0.5)).r()) < 1e-14);
}

TEST_CASE("repulsion threshold") {
  CHECK(two_body_curvature(3) > 0);
  CHECK(two_body_curvature(20) < 0);
  const double t = repulsion_threshold();
  CHECK(t >= 6);
  CHECK(t <= 8);
}
