#pragma once

// Dressed-molecule transformation: with the half-odd-integer frame frequencies
// w_i = (-3/2, -1/2, +1/2, +3/2) * w_r per parity block, the co-rotating
// monochromatic Hamiltonian becomes time independent,
//   H_d = W^{-1}(t) H_M(t) W(t) - D,
// constructed analytically by phase cancellation and certified numerically at
// sampled times.

#include <array>

#include "ohphase/matrix8.hpp"
#include "ohphase/model.hpp"

namespace ohphase {

struct DressedMatrix {
  Mat8 m;           // joules
  double residual;  // max time-dependence over sampled t, relative
};

// Frame frequencies in basis order, rad/s.
std::array<double, kDim> dressing_frequencies(double omega_r);

// H_d(omega) = static_part + omega * frame_part, exactly linear in omega.
// frame_part = hbar * diag(+3/2, +1/2, -1/2, -3/2) per parity block.
struct DressedLinearParts {
  Mat8 static_part;
  std::array<double, kDim> frame_diag;  // J s (multiplied by omega, rad/s)
};

DressedLinearParts dressed_linear_parts(const MoleculeParams& p,
                                        const FieldProtocol& f);

Mat8 dressed_matrix_at(const DressedLinearParts& parts, double omega_r);

// Full operation with the time-independence certificate (16 sampled t).
// Throws NonCancellation when the residual is >= 1e-12.
DressedMatrix dress(const MoleculeParams& p, const FieldProtocol& f);

// Escape-hatch variant: residual is evaluated against the raw (possibly
// bichromatic) H(t); anything outside the co-rotating family is rejected.
DressedMatrix dress_raw(const MoleculeParams& p, const RawProtocol& r);

// W(T) collapsed to its common scalar, exactly -1 for any omega_r > 0.
cplx antiperiodicity_factor(const FieldProtocol& f);

inline constexpr double kDressResidualTol = 1.0e-12;

}  // namespace ohphase
