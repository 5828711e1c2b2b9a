#pragma once

// Total, dynamical and geometric phases over one rotation period, the pure-B
// closed forms, the asymptotic expansions, and zero-phase searches.
//
// Conventions: gamma = E(omega_r) T / hbar with T = 2 pi / omega_r; the
// dynamical phase uses the static eigenvalue at the t = 0 field orientation
// with the same period; the geometric phase is their difference. Phases are
// reported unwrapped (they derive from energies, not from complex arguments).

#include <array>
#include <string>
#include <vector>

#include "ohphase/model.hpp"
#include "ohphase/spectrum.hpp"

namespace ohphase {

struct StatePhase {
  StateLabel label;
  double total = 0.0;      // rad
  double dynamical = 0.0;  // rad
  double geometric = 0.0;  // rad
};

struct PhaseRecord {
  double omega_r = 0.0;
  std::array<StatePhase, kDim> states;  // in label-slot order
};

// Below omega_floor the 0/0 in the geometric phase is removable; it is then
// evaluated from the centered difference of E(omega) across omega = 0.
double omega_floor(const MoleculeParams& p, const FieldProtocol& f);

// Per-slot geometric phases in the omega_r -> 0 limit (the Berry phases, in
// the subtraction convention used throughout: Berry = -2 pi M cos(theta_m)
// for a pure magnetic cone).
struct BerryLimits {
  std::array<double, kDim> geometric{};  // label-slot order
};
BerryLimits berry_limit(const MoleculeParams& p, const FieldProtocol& f);

// Phases from a labeled pair of spectra (throws LabelMismatch when the two
// label sets differ). For omega_r <= omega_floor the limit path is used.
PhaseRecord geometric_phase(const MoleculeParams& p, const FieldProtocol& f,
                            const DressedSpectrum& at_omega,
                            const DressedSpectrum& at_zero, double omega_r);

// One record per grid point of a tracked sweep.
std::vector<PhaseRecord> phases_on_sweep(const TrackedSweep& sweep);

// Pure-B closed form: Delta_gamma for M = (-3/2, -1/2, +1/2, +3/2). The common
// Delta_gamma / M factor is exposed separately. Throws NotPureMagnetic.
double magnetic_phase_per_unit_m(const MoleculeParams& p,
                                 const FieldProtocol& f, double omega_r);
std::array<double, 4> magnetic_phase_closed_form(const MoleculeParams& p,
                                                 const FieldProtocol& f,
                                                 double omega_r);

// 2 omega_L cos(theta_m); throws NotPureMagnetic / NoCriticalRate.
double critical_rotation_magnetic(const MoleculeParams& p,
                                  const FieldProtocol& f);

enum class Regime {
  magnetic_adiabatic,
  magnetic_fast,
  electric_weak,
  electric_strong,
};

// Leading (Berry) term and first correction coefficient.
//  magnetic_adiabatic: per unit M; berry + slope * omega_r
//  magnetic_fast:      per unit M; berry + slope / omega_r
//  electric_weak/strong: state (3/2, f) as printed; berry + slope * omega_r
struct Expansion {
  double berry = 0.0;
  double slope = 0.0;
  bool valid = true;          // regime inequalities satisfied at f.omega_r
  std::string warning;
};
Expansion asymptotic_phases(const MoleculeParams& p, const FieldProtocol& f,
                            Regime regime);

struct ZeroCrossing {
  bool relative = false;  // false: single-state zero of Delta_gamma_i
  int slot_i = 0;
  int slot_j = -1;        // partner slot in relative mode
  double omega_r = 0.0;
};

enum class ZeroMode { single_state, relative };

// Sign changes of Delta_gamma (or Delta_gamma_i - Delta_gamma_j) bracketed on
// the sweep grid, bisected to relative width 1e-12, ascending in omega_r.
std::vector<ZeroCrossing> find_zero_phase(const TrackedSweep& sweep,
                                          ZeroMode mode);

}  // namespace ohphase
