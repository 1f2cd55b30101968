#pragma once

// Quadrature for the energy integrals and the azimuthal mode sums.

#include "casimir/model.hpp"

#include <functional>

namespace casimir::quad {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_refinements = 60;     // panel bisections allowed on top of the first pass
  double tail_cut_ratio = 1e-16; // |f| / peak below which the integrand counts as decayed
};

struct ModeSumConfig {
  int m_max = 256;
  double tail_tol = 1e-12;
  int consecutive_small = 3;
};

struct Result {
  double value = 0.0;
  ConvergenceReport report;
};

using Integrand = std::function<double(double)>;
using ModeTerm = std::function<double(int)>;

void validate(const QuadConfig& cfg);
void validate(const ModeSumConfig& cfg);

/// Integral of f over [a, b] by globally adaptive tanh-sinh panels.
/// f is never evaluated at the endpoints, so integrable endpoint
/// singularities are allowed.
Result integrate(const Integrand& f, double a, double b, const QuadConfig& cfg = {});

/// Integral of f over (0, inf). f must decay at least exponentially past
/// some finite scale and may have an integrable (e.g. logarithmic)
/// singularity at 0. Throws ConvergenceError if the tolerance is not met.
Result integrate_semi_infinite(const Integrand& f, const QuadConfig& cfg = {});

/// sum_{m=-inf}^{inf} term(m) for an even term: term(0) + 2 sum_{m>=1} term(m).
/// Stops once cfg.consecutive_small successive pair terms 2 term(m) are at
/// most tail_tol * |partial sum|. report.modes_used is the largest m summed.
Result mode_sum(const ModeTerm& term, const ModeSumConfig& cfg = {});

} // namespace casimir::quad
