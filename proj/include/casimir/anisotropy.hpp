#pragma once

// Dipole fraction q = <d_z^2> / <d^2> and anisotropy factor
// gamma = (1 - q) / (2 q) for atomic eigenstates |n l m>.

#include <cstdint>
#include <string>

namespace casimir::anisotropy {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

private:
  std::int64_t num_;
  std::int64_t den_;
};

struct EigenstateLabel {
  int l = 0;
  int m = 0;

  friend bool operator==(const EigenstateLabel&, const EigenstateLabel&) = default;
};

void validate(const EigenstateLabel& state);

/// q_lm in closed form, exact.
Rational q_exact(const EigenstateLabel& state);
double q_closed(const EigenstateLabel& state);

/// q_lm rebuilt from Wigner 3-j symbols via the Wigner-Eckart theorem, with
/// the angular reduced elements |<l'||C1||l>|^2 = max(l, l') and a radial
/// factor common to l' = l +/- 1.
double q_from_cg(const EigenstateLabel& state);

Rational gamma_of_q(const Rational& q);
double gamma_of_q(double q);

/// Critical gamma for repulsion from a half-plane.
inline const Rational kRepulsionGamma{1, 4};

struct GammaMinimum {
  EigenstateLabel state;
  Rational gamma;
};

/// Exhaustive scan of l = 0..l_max, |m| <= l; first minimum in scan order.
GammaMinimum min_gamma_over_states(int l_max);

} // namespace casimir::anisotropy
