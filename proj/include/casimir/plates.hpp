#pragma once

// Atom between two perfectly conducting plates at z = 0 and z = a.
//
// All energies are returned as E * a^4 (units alpha_ref / a^4, alpha_ref = 1)
// and forces as F * a^5.

#include "casimir/model.hpp"
#include "casimir/quad.hpp"

namespace casimir::plates {

struct TwoBody {
  double e12; // atom and lower plate
  double e13; // atom and upper plate
};

struct ThreeBodyIntegral {
  double te;
  double tm;
  ConvergenceReport report;
};

struct Truncation {
  double e3; // leading three-scattering term, independent of Z
  double e4; // leading four-scattering term
};

TwoBody cp_two_body(const PlatesGeometry& geom, const Polarizability& alpha);

/// Three-body energy in closed form from Hurwitz zeta functions.
double cp_three_body_exact(const PlatesGeometry& geom, const Polarizability& alpha);

/// Three-body energy from the TE and TM multiple-scattering integrals.
ThreeBodyIntegral cp_three_body_integral(const PlatesGeometry& geom, const Polarizability& alpha,
                                         const quad::QuadConfig& cfg = {});

Truncation scattering_truncation(const PlatesGeometry& geom, const Polarizability& alpha);

/// E123 / (E12 + E13 + E123).
double three_body_ratio(const PlatesGeometry& geom, const Polarizability& alpha);

/// Force -dE/dZ on the atom from the exact total energy, by central
/// differences with step 1e-4 a (shrunk near a plate).
double force(const PlatesGeometry& geom, const Polarizability& alpha);

/// Every plate quantity at one point. Integral failures propagate as
/// ConvergenceError; report receives the quadrature diagnostics.
EnergyBreakdown breakdown(const PlatesGeometry& geom, const Polarizability& alpha,
                          const quad::QuadConfig& cfg, ConvergenceReport* report = nullptr);

} // namespace casimir::plates
