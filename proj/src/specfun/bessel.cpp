// Modified Bessel functions I_nu, K_nu of real order.
//
// K is obtained at the fractional order mu = nu - round(nu), |mu| <= 1/2, by
// Temme's series (x < 2) or Steed's continued fraction (x >= 2), then carried
// up to nu by the forward recurrence, which is stable for K. I'_nu/I_nu comes
// from its continued fraction, the ratio is walked down to mu, and the
// Wronskian I K' - I' K = -1/x fixes the normalisation of I.
//
// Values are carried with a binary exponent so that K_nu(x) ~ x^-nu can be
// large without overflowing; see ScaledBessel.

#include "casimir/model.hpp"
#include "casimir/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace casimir::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 200000;
// Recurrences renormalise once a value passes 2^100; one step multiplies by
// at most ~2 nu / x, so this leaves room for arguments down to ~1e-250.
const double kRescaleAt = std::ldexp(1.0, 100);

// Taylor coefficients of 1/Gamma(z) about z = 0; entry k multiplies z^(k+1).
constexpr std::array<double, 30> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
};

struct TemmeGammas {
  double gam1;  // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;  // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl; // 1/Gamma(1+mu)
  double gammi; // 1/Gamma(1-mu)
};

// |mu| <= 1/2. 1/Gamma(1+mu) = sum_k c_k mu^(k-1), so the even and odd parts
// of the series give gam2 and gam1 without cancellation at small mu.
TemmeGammas temme_gammas(double mu) {
  const double mu2 = mu * mu;
  double even = 0.0; // sum_{j even} c_j mu^j
  double odd = 0.0;  // sum_{j odd} c_j mu^(j-1)
  double pw = 1.0;
  for (std::size_t j = 0; j + 1 < kRecipGamma.size(); j += 2) {
    even += kRecipGamma[j] * pw;
    odd += kRecipGamma[j + 1] * pw;
    pw *= mu2;
  }
  TemmeGammas g{};
  g.gam2 = even;
  g.gam1 = -odd;
  g.gampl = even + mu * odd;
  g.gammi = even - mu * odd;
  return g;
}

[[noreturn]] void range_fail(const char* what, double nu, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "bessel_ik: " << what << " at nu=" << nu << ", x=" << x;
  throw RangeError(os.str());
}

} // namespace

ScaledBessel bessel_ik_scaled(double nu, double x) {
  if (!std::isfinite(nu) || nu < 0)
    throw DomainError("bessel_ik: order nu must be finite and >= 0");
  if (!std::isfinite(x) || x <= 0)
    throw DomainError("bessel_ik: argument x must be finite and > 0");

  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  // Continued fraction for f_nu = I'_nu / I_nu (modified Lentz).
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int it = 1;
  for (; it <= kMaxIter; ++it) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (it > kMaxIter) range_fail("continued fraction for I'/I did not converge", nu, x);

  // Downward recurrence of the unnormalised I from nu to mu.
  double ril = 1.0;
  double ripl = h * ril;
  const double ril_start = ril;
  const double ripl_start = ripl;
  int scale_i = 0;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double next = fact * ril + ripl;
    fact -= xi;
    ripl = fact * next + ril;
    ril = next;
    if (std::abs(ril) > kRescaleAt) {
      const int bits = std::ilogb(ril);
      ril = std::ldexp(ril, -bits);
      ripl = std::ldexp(ripl, -bits);
      scale_i += bits;
    }
  }
  const double f_mu = ripl / ril;

  // K_mu and K_{mu+1}, stored as K * e^x * 2^-scale_k.
  double rkmu = 0.0;
  double rk1 = 0.0;
  int scale_k = 0;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact1 = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = mu * dd;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact1 * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double cc = 1.0;
    dd = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      cc *= dd / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = cc * ff;
      sum += del;
      sum1 += cc * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) range_fail("Temme series did not converge", nu, x);
    // K_{mu+1} ~ x^-(1+mu) overflows for tiny x; pull out a power of two.
    scale_k = std::max(0, std::ilogb(xi2));
    const double ex = std::exp(x);
    rkmu = std::ldexp(sum, -scale_k) * ex;
    rk1 = std::ldexp(sum1, -scale_k) * xi2 * ex;
  } else {
    double bb = 2.0 * (1.0 + x);
    double dd = 1.0 / bb;
    double hh = dd;
    double delh = dd;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double cc = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      cc = -a * cc / i;
      const double qnew = (q1 - bb * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += cc * qnew;
      bb += 2.0;
      dd = 1.0 / (bb + a * dd);
      delh = (bb * dd - 1.0) * delh;
      hh += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) range_fail("Steed continued fraction did not converge", nu, x);
    hh = a1 * hh;
    rkmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    rk1 = rkmu * (mu + x + 0.5 - hh) * xi;
  }
  const int scale_k_mu = scale_k;

  const double rkmup = mu * xi * rkmu - rk1;
  // Wronskian at order mu; I_mu comes out as I * e^-x * 2^scale_k.
  const double rimu = xi / (f_mu * rkmu - rkmup);

  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
    if (std::abs(rk1) > kRescaleAt) {
      const int bits = std::ilogb(rk1);
      rkmu = std::ldexp(rkmu, -bits);
      rk1 = std::ldexp(rk1, -bits);
      scale_k += bits;
    }
  }

  ScaledBessel out{};
  out.exp2 = scale_k;
  out.k_val = rkmu;
  out.k_prime = nu * xi * rkmu - rk1;
  const int shift = scale_k - scale_k_mu - scale_i;
  out.i_val = std::ldexp(rimu * ril_start / ril, shift);
  out.i_prime = std::ldexp(rimu * ripl_start / ril, shift);

  // Move the magnitude of K into exp2 so every mantissa stays moderate:
  // k in [1, 2) and i ~ 1/(x k f), bounded since I K < 1/(2 nu) or so.
  const int norm = std::ilogb(out.k_val);
  out.exp2 += norm;
  out.k_val = std::ldexp(out.k_val, -norm);
  out.k_prime = std::ldexp(out.k_prime, -norm);
  out.i_val = std::ldexp(out.i_val, norm);
  out.i_prime = std::ldexp(out.i_prime, norm);
  return out;
}

BesselPair bessel_ik(double nu, double x) {
  const ScaledBessel s = bessel_ik_scaled(nu, x);
  const double up = std::exp(x);
  const double down = std::exp(-x);
  BesselPair out{};
  out.i_val = std::ldexp(s.i_val, -s.exp2) * up;
  out.i_prime = std::ldexp(s.i_prime, -s.exp2) * up;
  out.k_val = std::ldexp(s.k_val, s.exp2) * down;
  out.k_prime = std::ldexp(s.k_prime, s.exp2) * down;
  for (double v : {out.i_val, out.k_val}) {
    if (!std::isfinite(v)) range_fail("result overflows a double", nu, x);
    if (!std::isnormal(v)) range_fail("result underflows a double", nu, x);
  }
  if (!std::isfinite(out.i_prime) || !std::isfinite(out.k_prime))
    range_fail("derivative overflows a double", nu, x);
  return out;
}

} // namespace casimir::specfun
