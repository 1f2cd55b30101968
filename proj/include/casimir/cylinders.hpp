#pragma once

// Atom polarizable along the bisector (y) of two parallel perfectly
// conducting cylinders of radius a with axes 2 R0 apart.
//
// Every energy is a dimensionless coefficient in units alpha_yy / (4 pi R0^4).
// Integration runs over x = kappa R, so the cylinder-surface Bessel argument
// is x a sin(theta) / R0 and the field-point argument is x.

#include "casimir/model.hpp"
#include "casimir/quad.hpp"

namespace casimir::cylinders {

/// Largest a/R0 accepted by the three-body terms and total_energy.
inline constexpr double kMaxRegimeRatio = 0.1;
/// Above this a/R0 the m = 0 three-body approximation is flagged.
inline constexpr double kWarnRegimeRatio = 0.05;

/// Mode-sum defaults for the two-body energies (m_max = 64).
quad::ModeSumConfig default_mode_config();

/// TM (or TE) energy of the atom and one cylinder from the single mode m
/// (the m and -m terms are equal; this is one of them).
quad::Result two_body_tm_mode(const CylinderPairGeometry& geom, int m, const quad::QuadConfig& qcfg = {});
quad::Result two_body_te_mode(const CylinderPairGeometry& geom, int m, const quad::QuadConfig& qcfg = {});

/// Two-body TM and TE energies summed over m, doubled for the two cylinders.
/// Valid for any a < R0.
quad::Result two_body_tm(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg = default_mode_config(),
                         const quad::QuadConfig& qcfg = {});
quad::Result two_body_te(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg = default_mode_config(),
                         const quad::QuadConfig& qcfg = {});

/// m = 0 TM three-scattering energy E_123 (one of the two mirror partners).
quad::Result three_scattering_tm(const CylinderPairGeometry& geom, const quad::QuadConfig& qcfg = {});

/// m = 0 TM four-scattering energy E_1232 (one of the two mirror partners).
quad::Result four_scattering_tm(const CylinderPairGeometry& geom, const quad::QuadConfig& qcfg = {});

/// Two-body (TM + TE, both cylinders) plus three-body (both mirror partners
/// of the three- and four-scattering terms). e12 = e13 is the single
/// cylinder two-body energy; te_part and tm_part cover both cylinders.
EnergyBreakdown total_energy(const CylinderPairGeometry& geom, const quad::ModeSumConfig& mcfg = default_mode_config(),
                             const quad::QuadConfig& qcfg = {}, ConvergenceReport* report = nullptr);

/// d^2 E / d(y/R0)^2 at y = 0 of the two-body TM + TE energy, by central
/// differences with step 1e-3 R0. Negative means a local maximum between the
/// cylinders, i.e. repulsion for an atom approaching along the bisector.
double two_body_curvature(double r0_over_a, const quad::ModeSumConfig& mcfg = default_mode_config(),
                          const quad::QuadConfig& qcfg = {});

/// R0/a at which two_body_curvature changes sign, by bisection on [2, 20].
double repulsion_threshold(const quad::ModeSumConfig& mcfg = default_mode_config(), const quad::QuadConfig& qcfg = {});

} // namespace casimir::cylinders
