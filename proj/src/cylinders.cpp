#include "casimir/cylinders.hpp"

#include "casimir/specfun.hpp"

#include <cmath>
#include <sstream>

namespace casimir::cylinders {

namespace {

constexpr double kCurvatureStep = 1e-3;
constexpr double kBracketLo = 2.0;
constexpr double kBracketHi = 20.0;
constexpr double kBisectTol = 1e-7;
// Beyond this the e^{-2x(1-c)} decay of every integrand underflows.
constexpr double kUnderflowArg = 400.0;

// mant * 2^bits * e^expo, so products of Bessel values never overflow.
struct Scaled {
  double mant;
  long bits;
  double expo;

  Scaled operator*(const Scaled& o) const { return {mant * o.mant, bits + o.bits, expo + o.expo}; }
  Scaled operator/(const Scaled& o) const { return {mant / o.mant, bits - o.bits, expo - o.expo}; }

  double value() const {
    if (mant == 0.0) return 0.0;
    return static_cast<double>(std::ldexp(static_cast<long double>(mant) * std::exp(static_cast<long double>(expo)),
                                          static_cast<int>(bits)));
  }
};

struct Bessel {
  Scaled i, k, ip, kp;
};

Bessel bessel(int m, double x) {
  const specfun::ScaledBessel s = specfun::bessel_ik_scaled(m, x);
  return {{s.i_val, -s.exp2, x}, {s.k_val, s.exp2, -x}, {s.i_prime, -s.exp2, x}, {s.k_prime, s.exp2, -x}};
}

struct Angles {
  double sin_t;
  double cos_t; // sin(phi_tilde): exactly 0 at theta = pi/2
  double c;     // a sin(theta) / R0
};

Angles angles(const CylinderPairGeometry& geom) {
  const double s = std::sin(geom.theta());
  return {s, std::sin(geom.phi_tilde()), geom.a_over_r0() * s};
}

void check_regime(const CylinderPairGeometry& geom) {
  validate(geom);
  if (geom.a_over_r0() > kMaxRegimeRatio) {
    std::ostringstream os;
    os << "a/R0 = " << geom.a_over_r0() << " exceeds " << kMaxRegimeRatio
       << ": the m = 0 three-body terms assume a/R0 << 1";
    throw DomainError(os.str());
  }
}

void note_regime(const CylinderPairGeometry& geom, ConvergenceReport& report) {
  if (geom.a_over_r0() > kWarnRegimeRatio) {
    std::ostringstream os;
    os << "a/R0 = " << geom.a_over_r0() << " is above " << kWarnRegimeRatio
       << "; higher multipoles of the three-body terms may matter";
    report.warnings.push_back(os.str());
  }
}

quad::Result scaled(quad::Result r, double factor) {
  r.value *= factor;
  r.report.quad_abs_err_estimate *= std::abs(factor);
  r.report.tail_bound *= std::abs(factor);
  return r;
}

enum class Mode { TM, TE };

quad::Result mode_integral(const CylinderPairGeometry& geom, int m, Mode mode, const quad::QuadConfig& qcfg) {
  validate(geom);
  if (m < 0) throw DomainError("cylinder mode index must be >= 0 (terms are even in m)");
  const Angles ang = angles(geom);
  const double s2 = ang.sin_t * ang.sin_t;
  const double c2 = ang.cos_t * ang.cos_t;
  const double m2 = static_cast<double>(m) * m;
  // TM: I/K at the surface, bracket m^2 K^2 sin^2 + x^2 K'^2 cos^2.
  // TE: I'/K' at the surface, sin and cos exchanged.
  const double w_k = mode == Mode::TM ? m2 * s2 : m2 * c2;
  const double w_kp = mode == Mode::TM ? c2 : s2;
  if (w_k == 0.0 && w_kp == 0.0) return {};
  const auto f = [=](double x) {
    if (x * (1 - ang.c) > kUnderflowArg) return 0.0;
    const Bessel surf = bessel(m, x * ang.c);
    const Bessel field = bessel(m, x);
    const Scaled ratio = mode == Mode::TM ? surf.i / surf.k : surf.ip / surf.kp;
    const double kk = w_k == 0.0 ? 0.0 : (ratio * field.k * field.k).value();
    const double kpkp = w_kp == 0.0 ? 0.0 : (ratio * field.kp * field.kp).value();
    return x * (w_k * kk + w_kp * x * x * kpkp);
  };
  const double sign = mode == Mode::TM ? -1.0 : 1.0;
  return scaled(quad::integrate_semi_infinite(f, qcfg), sign * s2 * s2);
}

quad::Result summed(const CylinderPairGeometry& geom, Mode mode, const quad::ModeSumConfig& mcfg,
                    const quad::QuadConfig& qcfg) {
  validate(geom);
  ConvergenceReport quad_report;
  const auto term = [&](int m) {
    const quad::Result r = mode_integral(geom, m, mode, qcfg);
    quad_report.quad_abs_err_estimate += r.report.quad_abs_err_estimate;
    return r.value;
  };
  quad::Result r = quad::mode_sum(term, mcfg);
  r.report.quad_abs_err_estimate = quad_report.quad_abs_err_estimate;
  return scaled(r, 2.0);
}

// x^3 K0(2 x sin) ^ power_w I0(c x) / K0(c x) ^ power_k K0'(x)^2, m = 0 only.
quad::Result three_body_integral(const CylinderPairGeometry& geom, int power_w, int power_k, double sign,
                                 const quad::QuadConfig& qcfg) {
  check_regime(geom);
  const Angles ang = angles(geom);
  const double pref = sign * ang.cos_t * ang.cos_t * std::pow(ang.sin_t, 4);
  if (pref == 0.0) return {};
  const auto f = [=](double x) {
    if (x * (1 - 2 * ang.c) > kUnderflowArg) return 0.0;
    const Bessel surf = bessel(0, x * ang.c);
    const Bessel field = bessel(0, x);
    const Bessel between = bessel(0, 2 * x * ang.sin_t);
    Scaled v = surf.i * field.kp * field.kp;
    for (int j = 0; j < power_w; ++j) v = v * between.k;
    for (int j = 0; j < power_k; ++j) v = v / surf.k;
    return x * x * x * v.value();
  };
  quad::Result r = scaled(quad::integrate_semi_infinite(f, qcfg), pref);
  note_regime(geom, r.report);
  return r;
}

} // namespace

quad::ModeSumConfig default_mode_config() {
  quad::ModeSumConfig cfg;
  cfg.m_max = 64;
  return cfg;
}

quad::Result two_body_tm_mode(const CylinderPairGeometry& geom, int m, const quad::QuadConfig& qcfg) {
  return mode_integral(geom, m, Mode::TM, qcfg);
}

quad::Result two_body_te_mode(const CylinderPairGeometry& geom, int m, const quad::QuadConfig& qcfg) {
  return mode_integral(geom, m, Mode::TE, qcfg);
}

quad::Result two_body_tm(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg,
                         const quad::QuadConfig& qcfg) {
  return summed(geom, Mode::TM, mcfg, qcfg);
}

quad::Result two_body_te(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg,
                         const quad::QuadConfig& qcfg) {
  return summed(geom, Mode::TE, mcfg, qcfg);
}

quad::Result three_scattering_tm(const CylinderPairGeometry& geom, const quad::QuadConfig& qcfg) {
  return three_body_integral(geom, 1, 2, 1.0, qcfg);
}

quad::Result four_scattering_tm(const CylinderPairGeometry& geom, const quad::QuadConfig& qcfg) {
  return three_body_integral(geom, 2, 3, -1.0, qcfg);
}

EnergyBreakdown total_energy(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg,
                             const quad::QuadConfig& qcfg, ConvergenceReport* report) {
  check_regime(geom);
  const quad::Result tm = two_body_tm(geom, mcfg, qcfg);
  const quad::Result te = two_body_te(geom, mcfg, qcfg);
  const quad::Result e3 = three_scattering_tm(geom, qcfg);
  const quad::Result e4 = four_scattering_tm(geom, qcfg);
  EnergyBreakdown out;
  out.units = EnergyUnits::AlphaOver4PiR0_4;
  out.tm_part = tm.value;
  out.te_part = te.value;
  out.e12 = out.e13 = (tm.value + te.value) / 2;
  out.e3scatter = 2 * e3.value;
  out.e4scatter = 2 * e4.value;
  out.e123_total = out.e3scatter + out.e4scatter;
  if (report) {
    for (const quad::Result* r : {&tm, &te, &e3, &e4}) report->merge(r->report);
  }
  return out;
}

double two_body_curvature(double r0_over_a, const quad::ModeSumConfig& mcfg, const quad::QuadConfig& qcfg) {
  if (!(r0_over_a > 1)) throw DomainError("R0/a must exceed 1");
  const double h = kCurvatureStep;
  const auto energy = [&](double y) {
    const CylinderPairGeometry g = CylinderPairGeometry::from_height(1.0, r0_over_a, y * r0_over_a);
    return two_body_tm(g, mcfg, qcfg).value + two_body_te(g, mcfg, qcfg).value;
  };
  return (energy(h) - 2 * energy(0) + energy(-h)) / (h * h);
}

double repulsion_threshold(const quad::ModeSumConfig& mcfg, const quad::QuadConfig& qcfg) {
  double lo = kBracketLo, hi = kBracketHi;
  double f_lo = two_body_curvature(lo, mcfg, qcfg);
  const double f_hi = two_body_curvature(hi, mcfg, qcfg);
  if ((f_lo > 0) == (f_hi > 0)) {
    ConvergenceReport rep;
    rep.converged = false;
    std::ostringstream os;
    os << "repulsion_threshold: curvature does not change sign on R0/a in [" << lo << ", " << hi << "] ("
       << f_lo << ", " << f_hi << ")";
    rep.warnings.push_back(os.str());
    throw ConvergenceError(os.str(), 0.0, rep);
  }
  while (hi - lo > kBisectTol * lo) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = two_body_curvature(mid, mcfg, qcfg);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace casimir::cylinders
