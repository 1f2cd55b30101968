#include "casimir/plates.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace casimir;
using namespace casimir::plates;

namespace {

constexpr double kPi = std::numbers::pi;
const double kZeta4 = std::pow(kPi, 4) / 90;
// zeta(4, 3/2) from the half-integer identity, independent of the library zeta.
const double kZeta4Half3 = 15 * kZeta4 - 16;

const Polarizability kIso = Polarizability::isotropic(1);
const Polarizability kPerp{0, 0, 1};
const Polarizability kPar{1, 1, 0};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// sum_{n>=0} (n + q)^-4 by brute force with an integral remainder.
double direct_hurwitz4(double q) {
  const int n_max = 100000;
  double s = 0.0;
  for (int n = n_max - 1; n >= 0; --n) s += std::pow(n + q, -4);
  return s + 1.0 / (3 * std::pow(n_max + q - 0.5, 3));
}

} // namespace

TEST_CASE("two-body terms") {
  const TwoBody mid = cp_two_body({1, 0.5}, kIso);
  CHECK(rel(mid.e12, -6 / kPi) < 1e-15);
  CHECK(rel(mid.e13, -6 / kPi) < 1e-15);
  const TwoBody near = cp_two_body({1, 1e-3}, kIso);
  CHECK(rel(near.e12 * std::pow(1e-3, 4), -3 / (8 * kPi)) < 1e-14);
  const TwoBody none = cp_two_body({1, 0.3}, {0, 0, 0});
  CHECK(none.e12 == 0.0);
  CHECK(none.e13 == 0.0);
  // Lengths in units of a: only Z/a matters.
  CHECK(rel(cp_two_body({2, 0.6}, kIso).e12, cp_two_body({1, 0.3}, kIso).e12) < 1e-15);
}

TEST_CASE("exact three-body term at the midpoint") {
  const double iso = cp_three_body_exact({1, 0.5}, kIso);
  CHECK(rel(iso, (kZeta4 - 3 * kZeta4Half3) / (4 * kPi)) < 1e-12);
  CHECK(std::abs(iso - 0.030063) < 5e-7);
  const double perp = cp_three_body_exact({1, 0.5}, kPerp);
  CHECK(rel(perp, -(kZeta4 + kZeta4Half3) / (4 * kPi)) < 1e-12);
  CHECK(std::abs(perp + 0.1048172) < 5e-8);
}

TEST_CASE("mirror symmetry") {
  for (const Polarizability& al : {kIso, kPerp, kPar, Polarizability{0.3, 1.7, 0.9}}) {
    for (double z : {0.05, 0.21, 0.37, 0.49}) {
      const PlatesGeometry g{1, z}, m{1, 1 - z};
      CHECK(rel(cp_three_body_exact(g, al), cp_three_body_exact(m, al)) < 1e-13);
      CHECK(rel(three_body_ratio(g, al), three_body_ratio(m, al)) < 1e-13);
      const Truncation t = scattering_truncation(g, al), tm = scattering_truncation(m, al);
      CHECK(rel(t.e4, tm.e4) < 1e-13);
      CHECK(rel(cp_two_body(g, al).e12, cp_two_body(m, al).e13) < 1e-13);
    }
  }
}

TEST_CASE("integral form reproduces the exact form") {
  quad::QuadConfig cfg;
  cfg.rel_tol = 1e-12;
  for (const Polarizability& al : {kIso, kPerp, kPar}) {
    for (int i = 0; i < 20; ++i) {
      const PlatesGeometry g{1, 0.025 + 0.05 * i};
      const ThreeBodyIntegral it = cp_three_body_integral(g, al, cfg);
      const double exact = cp_three_body_exact(g, al);
      CHECK(std::abs(it.te + it.tm - exact) <= 1e-8 * std::abs(exact));
      CHECK(it.report.converged);
    }
  }
}

TEST_CASE("TE integral against a brute-force image sum") {
  const double z = 0.3;
  const ThreeBodyIntegral it = cp_three_body_integral({1, z}, kPar);
  const double bracket = -2 * kZeta4 + direct_hurwitz4(1 + z) + direct_hurwitz4(2 - z);
  CHECK(rel(it.te, -2.0 / (32 * kPi) * bracket) < 1e-9);
}

TEST_CASE("polarization splits of the integral form") {
  for (double z : {0.1, 0.5, 0.8}) {
    const ThreeBodyIntegral par = cp_three_body_integral({1, z}, kPar);
    CHECK(rel(par.tm, 3 * par.te) < 1e-9);
    const ThreeBodyIntegral perp = cp_three_body_integral({1, z}, kPerp);
    CHECK(perp.te == 0.0);
  }
}

TEST_CASE("scattering truncation") {
  const Truncation t = scattering_truncation({1, 0.5}, kIso);
  CHECK(rel(t.e3, 1 / (4 * kPi)) < 1e-15);
  CHECK(std::abs(t.e4 + 0.047157) < 1e-6);
  CHECK(std::abs(t.e3 + t.e4 - 0.032420) < 1e-6);
  CHECK(t.e3 + t.e4 >= cp_three_body_exact({1, 0.5}, kIso));
  for (int i = 0; i < 10; ++i) CHECK(scattering_truncation({1, 0.05 + 0.1 * i}, kIso).e3 == t.e3);
  CHECK(scattering_truncation({1, 0.5}, kPerp).e3 < 0);
  for (int i = 1; i < 100; ++i) {
    const PlatesGeometry g{1, i / 100.0};
    const Truncation tr = scattering_truncation(g, kIso);
    CHECK(tr.e3 + tr.e4 >= cp_three_body_exact(g, kIso));
  }
  const double exact = cp_three_body_exact({1, 0.5}, kIso);
  CHECK(std::abs(t.e3 + t.e4 - exact) / std::abs(exact) <= 0.1);
}

TEST_CASE("midpoint ratios") {
  CHECK(std::abs(three_body_ratio({1, 0.5}, kIso) + 0.007933) < 1e-5);
  CHECK(std::abs(three_body_ratio({1, 0.5}, kPerp) - 0.076062) < 1e-5);
  CHECK(std::abs(three_body_ratio({1, 0.5}, kPar) + 0.05593) < 1e-4);
  for (double z = 0.01; z <= 0.05; z += 0.01) {
    const double e123 = cp_three_body_exact({1, z}, kIso);
    CHECK(std::abs(e123) / std::abs(cp_two_body({1, z}, kIso).e12) <= 0.01);
  }
}

TEST_CASE("force") {
  CHECK(std::abs(force({1, 0.5}, kIso)) < 1e-7);
  // Near the lower plate the atom is pulled down: F = -dE/dZ ~ -4 tr / (8 pi Z^5).
  const double z = 0.01;
  CHECK(rel(force({1, z}, kIso), -4 * 3 / (8 * kPi * std::pow(z, 5))) < 1e-3);
  CHECK(force({1, 0.3}, kPerp) < 0);
}

TEST_CASE("plates validation") {
  CHECK_THROWS_AS(cp_two_body({1, 0}, kIso), DomainError);
  CHECK_THROWS_AS(cp_two_body({1, 1}, kIso), DomainError);
  CHECK_THROWS_AS(cp_three_body_exact({0, 0.5}, kIso), DomainError);
  CHECK_THROWS_AS(cp_two_body({1, 0.5}, {-1, 0, 0}), DomainError);
  CHECK_NOTHROW(validate(PlatesGeometry{1, 0.5}));
}
