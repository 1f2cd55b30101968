#include "casimir/model.hpp"
#include "casimir/specfun.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace casimir::specfun {

namespace {

constexpr int kMaxFactorial = 1700;

const std::vector<long double>& factorials() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kMaxFactorial + 1);
    t[0] = 1.0L;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

long double fact(int n) { return factorials()[static_cast<std::size_t>(n)]; }

// Twice an angular momentum quantum number.
int twice(double j, const char* name) {
  const double t = 2.0 * j;
  const double r = std::round(t);
  if (!std::isfinite(t) || std::abs(t - r) > 1e-9)
    throw DomainError(std::string("clebsch_gordan: ") + name + " is not an integer or half-integer");
  return static_cast<int>(r);
}

// Throws on malformed input; returns false for a projection outside [-j, j],
// which makes the coefficient vanish.
bool check_projection(int tj, int tm, const char* name) {
  if (tj < 0) throw DomainError(std::string("clebsch_gordan: negative ") + name);
  if ((tj - tm) % 2 != 0)
    throw DomainError(std::string("clebsch_gordan: projection and ") + name + " differ by a half-integer");
  return std::abs(tm) <= tj;
}

} // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  const int tj1 = twice(j1, "j1"), tm1 = twice(m1, "m1");
  const int tj2 = twice(j2, "j2"), tm2 = twice(m2, "m2");
  const int tJ = twice(J, "J"), tM = twice(M, "M");
  const bool in_range = check_projection(tj1, tm1, "j1") & check_projection(tj2, tm2, "j2") &
                        check_projection(tJ, tM, "J");
  if (!in_range) return 0.0;
  if (tM != tm1 + tm2) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  if ((tj1 + tj2 + tJ) / 2 + 1 > kMaxFactorial)
    throw DomainError("clebsch_gordan: angular momenta too large");

  const int a = (tj1 + tj2 - tJ) / 2;
  const int b = (tj1 - tj2 + tJ) / 2;
  const int c = (-tj1 + tj2 + tJ) / 2;
  const int d = (tj1 + tj2 + tJ) / 2 + 1;
  const int j1pm = (tj1 + tm1) / 2, j1mm = (tj1 - tm1) / 2;
  const int j2pm = (tj2 + tm2) / 2, j2mm = (tj2 - tm2) / 2;
  const int Jp = (tJ + tM) / 2, Jm = (tJ - tM) / 2;

  const long double triangle = (tJ + 1) * fact(a) * fact(b) * fact(c) / fact(d);
  const long double proj = fact(j1pm) * fact(j1mm) * fact(j2pm) * fact(j2mm) * fact(Jp) * fact(Jm);

  // Racah: sum over k with every factorial argument non-negative.
  const int e = (tJ - tj2 + tm1) / 2; // J - j2 + m1
  const int f = (tJ - tj1 - tm2) / 2; // J - j1 - m2
  const int kmin = std::max({0, -e, -f});
  const int kmax = std::min({a, j1mm, j2pm});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(a - k) * fact(j1mm - k) * fact(j2pm - k) * fact(e + k) * fact(f + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(std::sqrt(triangle) * std::sqrt(proj) * sum);
}

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  const int tj1 = twice(j1, "j1"), tj2 = twice(j2, "j2"), tm3 = twice(m3, "m3");
  const int tm1 = twice(m1, "m1"), tm2 = twice(m2, "m2"), tj3 = twice(j3, "j3");
  const bool in_range = check_projection(tj1, tm1, "j1") & check_projection(tj2, tm2, "j2") &
                        check_projection(tj3, tm3, "j3");
  if (!in_range || tm1 + tm2 + tm3 != 0) return 0.0;
  const int phase_twice = tj1 - tj2 - tm3;
  const double sign = ((phase_twice / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign / std::sqrt(tj3 + 1.0) * clebsch_gordan(j1, m1, j2, m2, j3, -m3);
}

} // namespace casimir::specfun
