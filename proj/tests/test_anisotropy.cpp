#include "casimir/anisotropy.hpp"
#include "casimir/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace casimir;
using namespace casimir::anisotropy;

namespace {

// num/den of q_lm over the common denominator (2l-1)(2l+1)(2l+3), l >= 1.
bool equals_common_form(const Rational& q, long long l, long long m) {
  const long long num = (l * l - m * m) * (2 * l + 3) + ((l + 1) * (l + 1) - m * m) * (2 * l - 1);
  const long long den = (2 * l - 1) * (2 * l + 1) * (2 * l + 3);
  return q.num() * den == num * q.den();
}

} // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 5) / Rational(6, 5) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, 5).to_string() == "3/5");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("closed form values") {
  CHECK(q_exact({0, 0}) == Rational(1, 3));
  CHECK(q_exact({1, 0}) == Rational(3, 5));
  CHECK(q_exact({1, 1}) == Rational(1, 5));
  CHECK(q_exact({1, -1}) == Rational(1, 5));
  CHECK(q_exact({2, 2}) == Rational(1, 7));
  CHECK(std::abs(q_closed({50, 0}) - 0.5) < 1e-3);
  for (int l = 1; l <= 50; ++l) {
    for (int m = -l; m <= l; ++m) CHECK(equals_common_form(q_exact({l, m}), l, m));
    const long long ll = l;
    CHECK(q_exact({l, 0}) == Rational(2 * ll * (ll + 1) - 1, 4 * ll * (ll + 1) - 3));
  }
}

TEST_CASE("Clebsch-Gordan route agrees with the closed form") {
  CHECK(std::abs(q_from_cg({0, 0}) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(q_from_cg({1, 0}) - 0.6) < 1e-15);
  CHECK(std::abs(q_from_cg({2, 2}) - 1.0 / 7.0) < 1e-15);
  for (int l = 0; l <= 20; ++l) {
    for (int m = -l; m <= l; ++m) CHECK(std::abs(q_from_cg({l, m}) - q_closed({l, m})) < 1e-13);
  }
}

TEST_CASE("sum rule and m = 0 maximality") {
  for (int l = 0; l <= 20; ++l) {
    Rational sum;
    const Rational top = q_exact({l, 0});
    for (int m = -l; m <= l; ++m) {
      sum = sum + q_exact({l, m});
      CHECK(q_exact({l, m}) <= top);
      CHECK(Rational(0) < q_exact({l, m}));
      CHECK(q_exact({l, m}) <= Rational(3, 5));
    }
    CHECK(sum == Rational(2 * l + 1, 3));
  }
  // q(l, 0) rises from l = 0 to its peak at l = 1, then falls toward 1/2.
  CHECK(q_exact({0, 0}) < q_exact({1, 0}));
  for (int l = 1; l < 50; ++l) CHECK(q_exact({l + 1, 0}) < q_exact({l, 0}));
}

TEST_CASE("anisotropy factor") {
  CHECK(gamma_of_q(Rational(3, 5)) == Rational(1, 3));
  CHECK(gamma_of_q(Rational(1, 3)) == Rational(1));
  CHECK(gamma_of_q(Rational(1, 2)) == Rational(1, 2));
  CHECK(gamma_of_q(0.6) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_of_q(0.0), DomainError);
  CHECK_THROWS_AS(gamma_of_q(Rational(1)), DomainError);
  for (int l_max : {1, 2, 10, 50}) {
    const GammaMinimum best = min_gamma_over_states(l_max);
    CHECK(best.state == EigenstateLabel{1, 0});
    CHECK(best.gamma == Rational(1, 3));
    CHECK_FALSE(best.gamma < kRepulsionGamma);
  }
  CHECK_THROWS_AS(min_gamma_over_states(0), DomainError);
}

TEST_CASE("label validation") {
  CHECK_THROWS_AS(q_closed({1, 2}), DomainError);
  CHECK_THROWS_AS(q_closed({-1, 0}), DomainError);
  CHECK_THROWS_AS(q_from_cg({2, -3}), DomainError);
}
