#include "casimir/quad.hpp"
#include "casimir/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace casimir;
using namespace casimir::quad;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// (3/8) zeta(4) summed term by term: sum_n 6/(2n)^4, with the remainder
// after N terms bounded by the integral 6/(16 * 3 N^3).
double planck_oracle() {
  double sum = 0.0;
  const int n_max = 200000;
  for (int n = n_max; n >= 1; --n) sum += 6.0 / std::pow(2.0 * n, 4);
  return sum + 6.0 / (16.0 * 3.0 * std::pow(n_max + 0.5, 3));
}

// Gamma''(4) = Gamma(4) [psi(4)^2 + psi'(4)].
double gamma_second_derivative_at_4() {
  const double psi = 1.0 + 0.5 + 1.0 / 3.0 - std::numbers::egamma;
  const double psi1 = kPi * kPi / 6 - (1.0 + 0.25 + 1.0 / 9.0);
  return 6.0 * (psi * psi + psi1);
}

double planck(double x) { return x * x * x / std::expm1(2 * x); }
double log_square(double x) {
  const double l = std::log(x);
  return x * x * x * l * l * std::exp(-x);
}

} // namespace

TEST_CASE("semi-infinite integrals with closed forms") {
  const QuadConfig cfg;
  const Result p = integrate_semi_infinite(planck, cfg);
  CHECK(rel(p.value, 0.375 * std::pow(kPi, 4) / 90) < 10 * cfg.rel_tol);
  CHECK(rel(p.value, planck_oracle()) < 10 * cfg.rel_tol);
  CHECK(rel(p.value, 0.405871212642) < 1e-11);
  CHECK(p.report.converged);

  const Result e = integrate_semi_infinite([](double x) { return std::exp(-x); }, cfg);
  CHECK(rel(e.value, 1.0) < 10 * cfg.rel_tol);

  const Result g = integrate_semi_infinite(log_square, cfg);
  CHECK(rel(g.value, gamma_second_derivative_at_4()) < 1e-10);
}

TEST_CASE("logarithmic endpoint singularities") {
  const auto k0 = [](double x) { return specfun::bessel_ik(0.0, x).k_val; };
  const auto guarded = [&](double x) { return x > 700 ? 0.0 : k0(x); };
  CHECK(rel(integrate_semi_infinite(guarded).value, kPi / 2) < 1e-10);
  const auto k0sq = [&](double x) {
    const double k = guarded(x);
    return k * k;
  };
  CHECK(rel(integrate_semi_infinite(k0sq).value, kPi * kPi / 4) < 1e-10);
  // int_0^1 ln^2 x dx = 2
  CHECK(rel(integrate([](double x) { return std::pow(std::log(x), 2); }, 0, 1).value, 2.0) < 1e-12);
}

TEST_CASE("tighter tolerance never reports a larger error") {
  for (auto f : {planck, log_square}) {
    QuadConfig cfg;
    double previous = integrate_semi_infinite(f, cfg).report.quad_abs_err_estimate;
    for (int i = 0; i < 6; ++i) {
      cfg.rel_tol /= 2;
      const double err = integrate_semi_infinite(f, cfg).report.quad_abs_err_estimate;
      CHECK(err <= previous);
      previous = err;
    }
  }
}

TEST_CASE("quadrature is deterministic") {
  const Result a = integrate_semi_infinite(log_square);
  const Result b = integrate_semi_infinite(log_square);
  CHECK(a.value == b.value);
  CHECK(a.report.quad_abs_err_estimate == b.report.quad_abs_err_estimate);
}

TEST_CASE("zero and non-decaying integrands") {
  const Result z = integrate_semi_infinite([](double) { return 0.0; });
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x); }), ConvergenceError);
}

TEST_CASE("refinement budget exhaustion carries the partial value") {
  QuadConfig cfg;
  cfg.max_refinements = 0;
  cfg.rel_tol = 1e-14;
  const auto wiggly = [](double x) { return std::sin(20 * x); };
  try {
    integrate(wiggly, 0, 3, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK_FALSE(e.report().converged);
    CHECK(std::isfinite(e.value()));
  }
  cfg.max_refinements = 60;
  cfg.rel_tol = 1e-10;
  CHECK(rel(integrate(wiggly, 0, 3, cfg).value, (1 - std::cos(60.0)) / 20) < 1e-9);
}

TEST_CASE("config validation") {
  QuadConfig bad;
  bad.rel_tol = 0;
  CHECK_THROWS_AS(integrate_semi_infinite(planck, bad), DomainError);
  ModeSumConfig bad_modes;
  bad_modes.m_max = 0;
  CHECK_THROWS_AS(mode_sum([](int) { return 0.0; }, bad_modes), DomainError);
}

TEST_CASE("mode sums") {
  const Result geo = mode_sum([](int m) { return std::ldexp(1.0, -std::abs(m)); });
  CHECK(rel(geo.value, 3.0) < 1e-12);
  CHECK(geo.report.converged);

  const Result zero = mode_sum([](int) { return 0.0; });
  CHECK(zero.value == 0.0);
  CHECK(zero.report.modes_used == ModeSumConfig{}.consecutive_small);

  // 1/(m^2+1) has an algebraic tail: sum_{m>M} 2/(m^2+1) < 2/M.
  ModeSumConfig slow;
  slow.m_max = 1000000;
  slow.tail_tol = 1e-9;
  const Result lorentz = mode_sum([](int m) { return 1.0 / (double(m) * m + 1.0); }, slow);
  const double exact = kPi / std::tanh(kPi);
  CHECK(rel(exact, 3.153348094) < 1e-9);
  CHECK(lorentz.value < exact);
  CHECK(exact - lorentz.value < 2.0 / lorentz.report.modes_used);

  CHECK_THROWS_AS(mode_sum([](int m) { return 1.0 / (double(m) * m + 1.0); }), ConvergenceError);
}
