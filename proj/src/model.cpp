#include "ohphase/model.hpp"

#include <cmath>

#include "ohphase/constants.hpp"

namespace ohphase {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

// Zeeman diagonal coefficients of mu_B B_z per row within a parity block.
constexpr double kZeemanDiag[4] = {-6.0 / 5.0, -2.0 / 5.0, 2.0 / 5.0, 6.0 / 5.0};
// Zeeman ladder coefficients of mu_B (B_x +- i B_y) on (r, r+1).
constexpr double kZeemanLadder[3] = {2.0 * kSqrt3 / 5.0, 4.0 / 5.0,
                                     2.0 * kSqrt3 / 5.0};
// Stark diagonal (of the e-f block) coefficients of mu_e E_z.
constexpr double kStarkDiag[4] = {3.0 / 5.0, 1.0 / 5.0, -1.0 / 5.0, -3.0 / 5.0};
// Stark ladder coefficients of mu_e (E_x +- i E_y) on (r, r+1) of the e-f block.
constexpr double kStarkLadder[3] = {-kSqrt3 / 5.0, -2.0 / 5.0, -kSqrt3 / 5.0};

}  // namespace

MoleculeParams MoleculeParams::oh_defaults() {
  namespace c = constants;
  return MoleculeParams{c::kTwoPi * c::kDeltaDefaultGHz * 1.0e9,
                        c::kMuEDefaultDebye * c::kDebye, c::kBohrMagneton,
                        c::kHbar};
}

void MoleculeParams::validate() const {
  if (!(delta > 0.0)) throw Error("MoleculeParams: delta must be > 0");
  if (!(mu_e > 0.0)) throw Error("MoleculeParams: mu_e must be > 0");
  if (!(mu_b > 0.0) || !(hbar > 0.0))
    throw Error("MoleculeParams: mu_b and hbar must be > 0");
}

void FieldProtocol::validate() const {
  if (b_mag < 0.0 || e_mag < 0.0)
    throw Error("FieldProtocol: field magnitudes must be >= 0");
  if (theta_m < 0.0 || theta_m > constants::kPi || theta_e < 0.0 ||
      theta_e > constants::kPi)
    throw Error("FieldProtocol: tilt angles must lie in [0, pi]");
  if (omega_r < 0.0) throw Error("FieldProtocol: omega_r must be >= 0");
}

std::vector<std::string> FieldProtocol::validity_warnings() const {
  std::vector<std::string> w;
  if (e_mag > 0.0 && e_mag < constants::kWeakEFieldVPerM)
    w.push_back("electric field below 1 kV/cm: effective model accuracy degrades");
  if (b_mag > 0.0 && b_mag < constants::kWeakBFieldTesla)
    w.push_back("magnetic field below 100 G: effective model accuracy degrades");
  return w;
}

FieldComponents fields_at(const FieldProtocol& f, double t) {
  FieldComponents c;
  if (f.b_mag > 0.0) {
    c.bx = f.b_mag * std::sin(f.theta_m) * std::cos(f.omega_r * t);
    c.by = f.b_mag * std::sin(f.theta_m) * std::sin(f.omega_r * t);
    c.bz = f.b_mag * std::cos(f.theta_m);
  }
  if (f.e_mag > 0.0) {
    c.ex = f.e_mag * std::sin(f.theta_e) * std::cos(f.omega_r * t);
    c.ey = f.e_mag * std::sin(f.theta_e) * std::sin(f.omega_r * t);
    c.ez = f.e_mag * std::cos(f.theta_e);
  }
  return c;
}

HamiltonianMatrix build_from_components(const MoleculeParams& p,
                                        const FieldComponents& c) {
  p.validate();
  Mat8 h;
  const double hd2 = 0.5 * p.hbar * p.delta;
  const cplx bplus{c.bx, c.by};   // B_x + i B_y
  const cplx eplus{c.ex, c.ey};   // E_x + i E_y

  for (int r = 0; r < 4; ++r) {
    // P block (e parity) and R = P + hbar*Delta*I (f parity)
    h(r, r) = -hd2 + kZeemanDiag[r] * p.mu_b * c.bz;
    h(4 + r, 4 + r) = +hd2 + kZeemanDiag[r] * p.mu_b * c.bz;
    // Q block: e-f Stark couplings, itself Hermitian
    h(r, 4 + r) = kStarkDiag[r] * p.mu_e * c.ez;
    h(4 + r, r) = kStarkDiag[r] * p.mu_e * c.ez;
  }
  for (int r = 0; r < 3; ++r) {
    const cplx zb = kZeemanLadder[r] * p.mu_b * bplus;
    h(r, r + 1) = zb;
    h(r + 1, r) = std::conj(zb);
    h(4 + r, 4 + r + 1) = zb;
    h(4 + r + 1, 4 + r) = std::conj(zb);
    const cplx ze = kStarkLadder[r] * p.mu_e * eplus;
    h(r, 4 + r + 1) = ze;
    h(4 + r + 1, r) = std::conj(ze);
    h(r + 1, 4 + r) = std::conj(ze);
    h(4 + r, r + 1) = ze;
  }
  return HamiltonianMatrix{h};
}

HamiltonianMatrix build_hamiltonian(const MoleculeParams& p,
                                    const FieldProtocol& f, double t) {
  f.validate();
  return build_from_components(p, fields_at(f, t));
}

HamiltonianMatrix build_hamiltonian_raw(const MoleculeParams& p,
                                        const RawProtocol& r, double t) {
  r.base.validate();
  FieldProtocol fb = r.base;
  FieldComponents c = fields_at(fb, t);
  if (r.e_rate_scale != 1.0 && fb.e_mag > 0.0) {
    const double we = r.e_rate_scale * fb.omega_r;
    c.ex = fb.e_mag * std::sin(fb.theta_e) * std::cos(we * t);
    c.ey = fb.e_mag * std::sin(fb.theta_e) * std::sin(we * t);
  }
  return build_from_components(p, c);
}

MonochromaticParts decompose_monochromatic(const MoleculeParams& p,
                                           const FieldProtocol& f) {
  f.validate();
  p.validate();
  MonochromaticParts out;
  const double hd2 = 0.5 * p.hbar * p.delta;
  const double bz = f.b_mag * std::cos(f.theta_m);
  const double ez = f.e_mag * std::cos(f.theta_e);
  const double bl = f.b_mag * std::sin(f.theta_m);
  const double el = f.e_mag * std::sin(f.theta_e);

  for (int r = 0; r < 4; ++r) {
    out.h_u(r, r) = -hd2 + kZeemanDiag[r] * p.mu_b * bz;
    out.h_u(4 + r, 4 + r) = +hd2 + kZeemanDiag[r] * p.mu_b * bz;
    out.v_s(r, 4 + r) = kStarkDiag[r] * p.mu_e * ez;
    out.v_s(4 + r, r) = kStarkDiag[r] * p.mu_e * ez;
  }
  // B_x + i B_y = B_l e^{+i w t}, so ladder terms above the diagonal carry
  // e^{+i w t} and land in v_plus; their mirrors land in v_minus.
  for (int r = 0; r < 3; ++r) {
    const double zb = kZeemanLadder[r] * p.mu_b * bl;
    out.v_plus(r, r + 1) = zb;
    out.v_plus(4 + r, 4 + r + 1) = zb;
    const double ze = kStarkLadder[r] * p.mu_e * el;
    out.v_plus(r, 4 + r + 1) = ze;
    out.v_plus(4 + r, r + 1) = ze;
  }
  out.v_minus = adjoint(out.v_plus);
  return out;
}

DerivedFrequencies derived_frequencies(const MoleculeParams& p,
                                       const FieldProtocol& f) {
  p.validate();
  f.validate();
  return DerivedFrequencies{0.8 * p.mu_b * f.b_mag / p.hbar,
                            p.mu_e * f.e_mag / p.hbar};
}

}  // namespace ohphase
