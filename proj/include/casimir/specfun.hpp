#pragma once

// Special functions used by the energy integrals and the anisotropy bound:
// modified Bessel functions of real order, Hurwitz/Riemann zeta, and
// Clebsch-Gordan / Wigner 3-j coefficients.

#include <cmath>

namespace casimir::specfun {

/// I_nu(x), K_nu(x) and their x-derivatives.
struct BesselPair {
  double i_val;
  double k_val;
  double i_prime;
  double k_prime;
};

/// Modified Bessel functions for nu >= 0, x > 0.
/// Throws DomainError for bad arguments and RangeError when a value
/// overflows or underflows a double.
BesselPair bessel_ik(double nu, double x);

/// Bessel values with both exponential and binary scaling removed:
///
///   I_nu(x)  = i_val   * 2^-exp2 * e^x,   K_nu(x)  = k_val   * 2^exp2 * e^-x,
///   I'_nu(x) = i_prime * 2^-exp2 * e^x,   K'_nu(x) = k_prime * 2^exp2 * e^-x.
///
/// Since I_nu K_nu = O(1/nu), the mantissas stay representable for
/// any order and argument; products and ratios of them can be formed
/// without intermediate overflow.
struct ScaledBessel {
  double i_val;
  double k_val;
  double i_prime;
  double k_prime;
  int exp2;
};

ScaledBessel bessel_ik_scaled(double nu, double x);

/// Hurwitz zeta sum_{n>=0} (n+q)^-s, for s > 1 and q > 0.
double hurwitz_zeta(double s, double q);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

/// <j1 m1 j2 m2 | J M>. Arguments are integers or half-integers.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

/// Wigner 3-j symbol ( j1 j2 j3 ; m1 m2 m3 ).
double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);

} // namespace casimir::specfun
