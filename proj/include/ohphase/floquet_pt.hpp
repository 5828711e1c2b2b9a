#pragma once

// Time-dependent (Floquet) perturbation theory in the monochromatic operators
// V_s, V_-, V_+ about the bare magnetic spectrum H_u. Undefined at B = 0 where
// the bare spectrum is degenerate.
//
// The closed second-order form is cross-checked against a generic numeric
// Floquet sum with energy denominators E_i - E_j -+ hbar*omega_r; the printed
// third-order expression is reproduced as printed, in both readings of its
// dimensionally ambiguous omega_L term.

#include <vector>

#include "ohphase/model.hpp"

namespace ohphase {

struct PerturbationResult {
  double order2_phase = 0.0;  // rad
  double order3_phase = 0.0;  // rad; exactly 0 when E = 0
  bool small_angle_ok = true;     // both tilt angles <= 0.3 rad
  bool nondegenerate_ok = true;   // B > 0
};

inline constexpr double kSmallAngleWarn = 0.3;  // rad

// Closed forms over raw angular frequencies (rad/s) and angles; used by the
// protocol-level wrappers and by property tests that exercise signed angles.
double pt2_closed_form(double delta, double omega_l, double omega_e,
                       double theta_m, double theta_e);
double pt3_closed_form(double delta, double omega_l, double omega_e,
                       double theta_m, double theta_e, bool omega_l_squared);

// Second-order geometric phase of the most energetic state (3/2, f), in the
// 2 pi (1 - cos) offset convention. Throws DegenerateBareSpectrum at B = 0.
double pt2_phase(const MoleculeParams& p, const FieldProtocol& f);

// Printed third-order correction; omega_l_squared selects the reading with
// the squared omega_L term in the numerator.
double pt3_phase(const MoleculeParams& p, const FieldProtocol& f,
                 bool omega_l_squared = false);

PerturbationResult pt_result(const MoleculeParams& p, const FieldProtocol& f,
                             bool pt3_omega_l_squared = false);

// Generic second-order Floquet quasi-energy shift of bare state n at finite
// omega_r (joules), and its adiabatic geometric-phase limit (rad).
double quasi_energy_shift2(const MoleculeParams& p, const FieldProtocol& f,
                           int state, double omega_r);
double pt2_sum_phase(const MoleculeParams& p, const FieldProtocol& f,
                     int state);
double pt2_sum_phase(const MoleculeParams& p, const FieldProtocol& f);

// First-order shift <n|V|n> (exactly zero: all V operators are off-diagonal).
double first_order_shift(const MoleculeParams& p, const FieldProtocol& f,
                         int state);

struct PtExactRow {
  double theta;     // common tilt angle
  double pt;        // pt2 (+ pt3 when E != 0)
  double exact;     // adiabatic Delta_gamma(3/2,f) + 3 pi offset
  double residual;  // |pt - exact|
};

// Small-angle scan: theta_m = theta (and theta_e = theta when E != 0).
// In the magnetic-only case the residual scales as O(theta^4).
std::vector<PtExactRow> pt_vs_exact_report(const MoleculeParams& p,
                                           const FieldProtocol& base,
                                           const std::vector<double>& angles);

}  // namespace ohphase
