#include "casimir/model.hpp"
#include "casimir/specfun.hpp"

#include <array>
#include <cmath>

namespace casimir::specfun {

namespace {

constexpr double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    (1.0 / 6.0) / factorial(2),
    (-1.0 / 30.0) / factorial(4),
    (1.0 / 42.0) / factorial(6),
    (-1.0 / 30.0) / factorial(8),
    (5.0 / 66.0) / factorial(10),
    (-691.0 / 2730.0) / factorial(12),
    (7.0 / 6.0) / factorial(14),
    (-3617.0 / 510.0) / factorial(16),
    (43867.0 / 798.0) / factorial(18),
    (-174611.0 / 330.0) / factorial(20),
    (854513.0 / 138.0) / factorial(22),
    (-236364091.0 / 2730.0) / factorial(24),
};

} // namespace

double hurwitz_zeta(double s, double q) {
  if (!std::isfinite(s) || s <= 1.0) throw RangeError("hurwitz_zeta: requires s > 1");
  if (!std::isfinite(q) || q <= 0.0) throw DomainError("hurwitz_zeta: requires q > 0");

  // Shift q up by whole steps until the Euler-Maclaurin remainder is
  // negligible with twelve Bernoulli corrections.
  const double threshold = 10.0 + s;
  const int shift = q >= threshold ? 0 : static_cast<int>(std::ceil(threshold - q));
  const double w = q + shift;

  double head = 0.0;
  for (int k = shift - 1; k >= 0; --k) head += std::pow(q + k, -s);

  const double w_s = std::pow(w, -s);
  double tail = w * w_s / (s - 1.0) + 0.5 * w_s;
  double poch = s;             // s (s+1) ... (s+2j-2)
  double wpow = w_s / w;       // w^(-s-2j+1)
  const double inv_w2 = 1.0 / (w * w);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    tail += kBernoulliOverFactorial[j] * poch * wpow;
    const double base = s + 2.0 * static_cast<double>(j);
    poch *= (base + 1.0) * (base + 2.0);
    wpow *= inv_w2;
  }
  return head + tail;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

} // namespace casimir::specfun
