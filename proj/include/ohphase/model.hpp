#pragma once

// Physical parameters and the time-dependent 8x8 Stark-Zeeman matrix of the
// OH X^2 Pi_3/2, J = 3/2 manifold in co-rotating magnetic and electric fields.
//
// Basis ordering: indices 0..3 are the e-parity block (diagonal -hbar*Delta/2),
// indices 4..7 the f-parity block (+hbar*Delta/2), each sub-block in the row
// order of the printed Zeeman/Stark matrices. Note that within a block the
// physical Zeeman diagonal runs (-6/5, -2/5, +2/5, +6/5) mu_B Bz, i.e. the
// dressed-level label M = (-3/2, -1/2, +1/2, +3/2) ascends with row index
// while the lab-frame projection of the printed basis descends.

#include <string>
#include <vector>

#include "ohphase/errors.hpp"
#include "ohphase/matrix8.hpp"

namespace ohphase {

struct MoleculeParams {
  double delta;  // lambda-doubling splitting, rad/s
  double mu_e;   // electric dipole moment, C m
  double mu_b;   // Bohr magneton, J/T
  double hbar;   // J s

  static MoleculeParams oh_defaults();
  void validate() const;  // throws Error on bad values
};

struct FieldProtocol {
  double b_mag = 0.0;    // T
  double theta_m = 0.0;  // rad, in [0, pi]
  double e_mag = 0.0;    // V/m
  double theta_e = 0.0;  // rad, in [0, pi]
  double omega_r = 0.0;  // common rotation rate, rad/s, >= 0

  void validate() const;
  // Model accuracy warnings for weak nonzero fields; never errors.
  std::vector<std::string> validity_warnings() const;
};

// Instantaneous Cartesian components of both fields.
struct FieldComponents {
  double bx = 0, by = 0, bz = 0;  // T
  double ex = 0, ey = 0, ez = 0;  // V/m
};

FieldComponents fields_at(const FieldProtocol& f, double t);

struct HamiltonianMatrix {
  Mat8 m;  // entries in joules
  static constexpr const char* kBasis = "J=3/2 parity basis, e(0..3) f(4..7)";
};

struct DerivedFrequencies {
  double omega_l;  // magnetic Larmor frequency (4/5) mu_B B / hbar, rad/s
  double omega_e;  // electric analogue mu_e E / hbar, rad/s
};

// H_M(t) for the harmonically rotating protocol.
HamiltonianMatrix build_hamiltonian(const MoleculeParams& p,
                                    const FieldProtocol& f, double t);

// Same matrix from explicit Cartesian components (static snapshot).
HamiltonianMatrix build_from_components(const MoleculeParams& p,
                                        const FieldComponents& c);

// H_M(t) = H_u + V_s + V_minus e^{-i w_r t} + V_plus e^{+i w_r t}
struct MonochromaticParts {
  Mat8 h_u;      // diagonal: lambda doublet + static Zeeman (B_z)
  Mat8 v_s;      // static e-f Stark couplings (E_z)
  Mat8 v_minus;  // coefficient of e^{-i w_r t}
  Mat8 v_plus;   // = adjoint(v_minus)
};

MonochromaticParts decompose_monochromatic(const MoleculeParams& p,
                                           const FieldProtocol& f);

DerivedFrequencies derived_frequencies(const MoleculeParams& p,
                                       const FieldProtocol& f);

// Escape hatch for protocols whose electric field rotates at a different rate
// (e_rate_scale * omega_r). Not part of the co-rotating family: dressing will
// refuse it via NonCancellation. Used by the verification CLI only.
struct RawProtocol {
  FieldProtocol base;
  double e_rate_scale = 1.0;
};

HamiltonianMatrix build_hamiltonian_raw(const MoleculeParams& p,
                                        const RawProtocol& r, double t);

}  // namespace ohphase
