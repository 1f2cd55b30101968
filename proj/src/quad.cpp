#include "casimir/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace casimir::quad {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kStep = 1.0 / 8;  // coarse tanh-sinh step; the fine pass halves it
constexpr double kTMax = 4.5;      // weights beyond this are below 1e-60
constexpr int kScanMin = -40;
constexpr int kScanMax = 60;
constexpr int kMaxTailSegments = 64;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

// One tanh-sinh node at parameter t on [a, b]: adds w f(x) to sum. Endpoint
// distances are formed directly so nodes crowding an endpoint keep their
// relative accuracy.
void add_node(const Integrand& f, double a, double b, double t, double& sum) {
  const double u = kHalfPi * std::sinh(t);
  const double len = b - a;
  const double x = t < 0 ? a + len / (1.0 + std::exp(-2.0 * u)) : b - len / (1.0 + std::exp(2.0 * u));
  if (!(x > a && x < b)) return;
  const double ch = std::cosh(u);
  const double w = 0.5 * len * kHalfPi * std::cosh(t) / (ch * ch);
  if (w == 0.0) return;
  sum += w * f(x);
}

Panel tanh_sinh_panel(const Integrand& f, double a, double b) {
  const int n = static_cast<int>(kTMax / kStep);
  double coarse = 0.0;
  add_node(f, a, b, 0.0, coarse);
  for (int k = 1; k <= n; ++k) {
    add_node(f, a, b, -k * kStep, coarse);
    add_node(f, a, b, k * kStep, coarse);
  }
  double odd = 0.0;
  const double h = kStep / 2;
  for (int k = 1; k <= 2 * n; k += 2) {
    add_node(f, a, b, -k * h, odd);
    add_node(f, a, b, k * h, odd);
  }
  const double s1 = coarse * kStep;
  const double s2 = 0.5 * s1 + odd * h;
  return {a, b, s2, std::abs(s2 - s1)};
}

double tolerance(const QuadConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

std::string failure(const char* what, double value, double err) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": value " << value << ", error estimate " << err;
  return os.str();
}

} // namespace

void validate(const QuadConfig& cfg) {
  if (!(cfg.rel_tol > 0 && cfg.rel_tol < 1))
    throw DomainError("quadrature rel_tol must lie in (0, 1)");
  if (!(cfg.abs_tol > 0)) throw DomainError("quadrature abs_tol must be > 0");
  if (cfg.max_refinements < 0) throw DomainError("quadrature max_refinements must be >= 0");
  if (!(cfg.tail_cut_ratio > 0 && cfg.tail_cut_ratio < 1))
    throw DomainError("quadrature tail_cut_ratio must lie in (0, 1)");
}

void validate(const ModeSumConfig& cfg) {
  if (cfg.m_max < 1) throw DomainError("mode sum m_max must be >= 1");
  if (!(cfg.tail_tol > 0)) throw DomainError("mode sum tail_tol must be > 0");
  if (cfg.consecutive_small < 1) throw DomainError("mode sum consecutive_small must be >= 1");
}

Result integrate(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  validate(cfg);
  if (!(std::isfinite(a) && std::isfinite(b) && a <= b))
    throw DomainError("integrate: interval must be finite with a <= b");
  Result out;
  if (a == b) return out;

  std::vector<Panel> panels{tanh_sinh_panel(f, a, b)};
  auto totals = [&] {
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  int refinements = 0;
  while (error > tolerance(cfg, value) && refinements < cfg.max_refinements) {
    // Worst panel first; ties go to the leftmost, which keeps the order fixed.
    const auto worst = std::max_element(panels.begin(), panels.end(),
                                        [](const Panel& l, const Panel& r) { return l.error < r.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (!(mid > worst->a && mid < worst->b)) break;
    const Panel left = tanh_sinh_panel(f, worst->a, mid);
    const Panel right = tanh_sinh_panel(f, mid, worst->b);
    *worst = left;
    panels.insert(worst + 1, right);
    ++refinements;
    std::tie(value, error) = totals();
  }

  out.value = value;
  out.report.quad_abs_err_estimate = error;
  if (!std::isfinite(value)) {
    out.report.converged = false;
    throw ConvergenceError("integrate: integrand produced a non-finite value", value, out.report);
  }
  if (error > tolerance(cfg, value)) {
    out.report.converged = false;
    out.report.warnings.push_back(failure("integrate: refinement limit reached", value, error));
    throw ConvergenceError(out.report.warnings.back(), value, out.report);
  }
  return out;
}

Result integrate_semi_infinite(const Integrand& f, const QuadConfig& cfg) {
  validate(cfg);

  // Locate the decay scale on a geometric grid: X is the first sample past
  // the running peak where |f| has dropped below the cut twice in a row.
  double peak = 0.0;
  double cut_at = 0.0;
  int below = 0;
  for (int k = kScanMin; k <= kScanMax; ++k) {
    const double x = std::ldexp(1.0, k);
    const double v = std::abs(f(x));
    if (!std::isfinite(v)) {
      ConvergenceReport rep;
      rep.converged = false;
      throw ConvergenceError(failure("integrate_semi_infinite: non-finite integrand during scan", x, v), 0.0, rep);
    }
    peak = std::max(peak, v);
    if (peak > 0 && v <= cfg.tail_cut_ratio * peak) {
      if (++below == 2) {
        cut_at = std::ldexp(1.0, k - 1);
        break;
      }
    } else {
      below = 0;
    }
  }
  Result out;
  if (peak == 0.0) return out;
  if (cut_at == 0.0) cut_at = std::ldexp(1.0, kScanMax);

  out = integrate(f, 0.0, cut_at, cfg);

  // Tail on doubling segments until one contributes nothing measurable.
  double lo = cut_at;
  int seg = 0;
  for (; seg < kMaxTailSegments; ++seg) {
    QuadConfig seg_cfg = cfg;
    seg_cfg.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value)) / 4;
    const Result part = integrate(f, lo, 2 * lo, seg_cfg);
    out.value += part.value;
    out.report.quad_abs_err_estimate += part.report.quad_abs_err_estimate;
    out.report.tail_bound = std::abs(part.value);
    lo *= 2;
    if (std::abs(part.value) <= tolerance(cfg, out.value) * 1e-3) break;
  }
  if (seg == kMaxTailSegments) {
    out.report.converged = false;
    out.report.warnings.push_back(failure("integrate_semi_infinite: integrand does not decay", out.value,
                                          out.report.tail_bound));
    throw ConvergenceError(out.report.warnings.back(), out.value, out.report);
  }
  return out;
}

Result mode_sum(const ModeTerm& term, const ModeSumConfig& cfg) {
  validate(cfg);
  Result out;
  double sum = term(0);
  double pair = 0.0;
  int small = 0;
  int m = 1;
  for (;; ++m) {
    if (m > cfg.m_max) {
      out.value = sum;
      out.report.modes_used = cfg.m_max;
      out.report.tail_bound = std::abs(pair);
      out.report.converged = false;
      out.report.warnings.push_back(failure("mode_sum: m_max reached before the tail criterion", sum, pair));
      throw ConvergenceError(out.report.warnings.back(), sum, out.report);
    }
    pair = 2.0 * term(m);
    sum += pair;
    if (!std::isfinite(sum)) {
      out.report.converged = false;
      throw ConvergenceError("mode_sum: non-finite term", sum, out.report);
    }
    small = std::abs(pair) <= cfg.tail_tol * std::abs(sum) ? small + 1 : 0;
    if (small >= cfg.consecutive_small) break;
  }
  out.value = sum;
  out.report.modes_used = m;
  out.report.tail_bound = std::abs(pair);
  return out;
}

} // namespace casimir::quad
