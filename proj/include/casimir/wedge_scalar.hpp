#pragma once

// Scalar "atom" with coupling alpha outside a Dirichlet wedge, and the
// electromagnetic atom-plane energy it reduces to at p = 1.
//
// Energies are in natural units; divide by alpha / (8 pi R^2) for the
// dimensionless form.

#include "casimir/model.hpp"
#include "casimir/quad.hpp"

namespace casimir::wedge_scalar {

/// -alpha/(8 pi R^2) [p^2 / sin^2 p(phi - beta/2) + (1 - p^2)/3].
double scalar_cp_closed(const WedgeGeometry& geom, double alpha);

/// The same energy from the multiple-scattering single integral over t.
quad::Result scalar_cp_integral(const WedgeGeometry& geom, double alpha, const quad::QuadConfig& cfg = {});

/// -trace_alpha / (8 pi rho^4).
double em_atom_plane(double trace_alpha, double rho);

/// alpha / (8 pi R^2), the natural energy scale of the wedge.
double energy_scale(const WedgeGeometry& geom, double alpha);

} // namespace casimir::wedge_scalar
