#include "casimir/anisotropy.hpp"

#include "casimir/model.hpp"
#include "casimir/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace casimir::anisotropy {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  return {a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_};
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
  return {(a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

void validate(const EigenstateLabel& state) {
  if (state.l < 0) throw DomainError("orbital quantum number l must be >= 0");
  if (std::abs(state.m) > state.l) throw DomainError("magnetic quantum number must satisfy |m| <= l");
}

Rational q_exact(const EigenstateLabel& state) {
  validate(state);
  const std::int64_t l = state.l, m2 = std::int64_t{state.m} * state.m;
  // For l = 0 the numerator l^2 - m^2 vanishes along with the pole at l = 1/2.
  const Rational lower = l == 0 ? Rational(0) : Rational(l * l - m2, (2 * l - 1) * (2 * l + 1));
  return lower + Rational((l + 1) * (l + 1) - m2, (2 * l + 1) * (2 * l + 3));
}

double q_closed(const EigenstateLabel& state) { return q_exact(state).to_double(); }

double q_from_cg(const EigenstateLabel& state) {
  validate(state);
  using specfun::wigner_3j;
  const double l = state.l, m = state.m;
  double along_z = 0.0;
  double all = 0.0;
  for (double lp : {l - 1, l + 1}) {
    if (lp < 0) continue;
    const double reduced = std::max(l, lp);
    along_z += reduced * std::pow(wigner_3j(lp, 1, l, -m, 0, m), 2);
    double components = 0.0;
    for (int s = -1; s <= 1; ++s) {
      const double mp = m + s;
      if (std::abs(mp) > lp) continue;
      components += std::pow(wigner_3j(lp, 1, l, -mp, s, m), 2);
    }
    all += reduced * components;
  }
  return along_z / all;
}

Rational gamma_of_q(const Rational& q) {
  if (!(Rational(0) < q && q < Rational(1))) throw DomainError("dipole fraction q must lie in (0, 1)");
  return (Rational(1) - q) / (Rational(2) * q);
}

double gamma_of_q(double q) {
  if (!(q > 0 && q < 1)) throw DomainError("dipole fraction q must lie in (0, 1)");
  return (1 - q) / (2 * q);
}

GammaMinimum min_gamma_over_states(int l_max) {
  if (l_max < 1) throw DomainError("l_max must be >= 1");
  GammaMinimum best{{0, 0}, gamma_of_q(q_exact({0, 0}))};
  for (int l = 1; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Rational g = gamma_of_q(q_exact({l, m}));
      if (g < best.gamma) best = {{l, m}, g};
    }
  }
  return best;
}

} // namespace casimir::anisotropy
