#include "casimir/wedge_scalar.hpp"

#include <cmath>
#include <numbers>

namespace casimir::wedge_scalar {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const WedgeGeometry& geom, double alpha) {
  validate(geom);
  if (!std::isfinite(alpha) || alpha < 0) throw DomainError("scalar coupling alpha must be finite and >= 0");
}

// (cosh x - cos y) 2 e^-x, written so that neither small x nor large x
// loses precision: (1 - e^-x)^2 + 4 sin^2(y/2) e^-x.
double reduced_gap(double x, double half_sin) {
  const double em = std::expm1(-x);
  return em * em + 4 * half_sin * half_sin * std::exp(-x);
}

} // namespace

double energy_scale(const WedgeGeometry& geom, double alpha) {
  return alpha / (8 * kPi * geom.r() * geom.r());
}

double scalar_cp_closed(const WedgeGeometry& geom, double alpha) {
  check(geom, alpha);
  const double p = geom.p();
  const double s = std::sin(p * geom.phi_face());
  if (s == 0.0) throw DomainError("atom lies on a wedge face");
  return -energy_scale(geom, alpha) * (p * p / (s * s) + (1 - p * p) / 3);
}

quad::Result scalar_cp_integral(const WedgeGeometry& geom, double alpha, const quad::QuadConfig& cfg) {
  check(geom, alpha);
  const double p = geom.p();
  const double th = geom.phi_face();
  const double th2 = geom.phi() + geom.beta() / 2;
  const double sin_pth = std::sin(p * th);
  if (sin_pth == 0.0) throw DomainError("atom lies on a wedge face");
  // Half-angle factors of the three denominators, cosh pt -/+ cos p th and
  // cosh t - cos(phi +/- beta/2).
  const double h_minus = std::sin(p * th / 2);
  const double h_plus = std::cos(p * th / 2);
  const double h_face = std::sin(th / 2);
  const double h_far = std::sin(th2 / 2);

  // sinh t / (cosh t - c) = (1 - e^-2t) / D,
  // sinh pt / (cosh pt - c)^2 = 2 e^-pt (1 - e^-2pt) / D^2.
  const auto f = [=](double t) {
    const double pt = p * t;
    const double num_t = -std::expm1(-2 * t);
    const double num_pt = -2 * std::expm1(-2 * pt) * std::exp(-pt);
    const double d_minus = reduced_gap(pt, h_minus);
    const double d_plus = reduced_gap(pt, h_plus);
    return num_pt * num_t *
           (1 / (d_minus * d_minus * reduced_gap(t, h_face)) + 1 / (d_plus * d_plus * reduced_gap(t, h_far)));
  };
  const double pref = -alpha * p * p * sin_pth / (4 * kPi * kPi * geom.r() * geom.r());
  const auto scale = [pref](ConvergenceReport rep) {
    rep.quad_abs_err_estimate *= std::abs(pref);
    rep.tail_bound *= std::abs(pref);
    return rep;
  };
  try {
    quad::Result r = quad::integrate_semi_infinite(f, cfg);
    r.value *= pref;
    r.report = scale(std::move(r.report));
    return r;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), e.value() * pref, scale(e.report()));
  }
}

double em_atom_plane(double trace_alpha, double rho) {
  if (!std::isfinite(rho) || rho <= 0) throw DomainError("atom-plane distance rho must be > 0");
  if (!std::isfinite(trace_alpha) || trace_alpha < 0) throw DomainError("trace of alpha must be finite and >= 0");
  return -trace_alpha / (8 * kPi * std::pow(rho, 4));
}

} // namespace casimir::wedge_scalar
