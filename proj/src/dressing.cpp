#include "ohphase/dressing.hpp"

#include <cmath>
#include <functional>

#include "ohphase/constants.hpp"

namespace ohphase {

namespace {

// w_i / omega_r, i.e. the half-odd-integer multipliers in basis order
constexpr double kFrameMult[kDim] = {-1.5, -0.5, 0.5, 1.5, -1.5, -0.5, 0.5, 1.5};
constexpr int kResidualSamples = 16;  // catches surviving e^{ik w t} up to k = 8

double residual_against(const MoleculeParams& p, const Mat8& hd, double omega_r,
                        const std::function<Mat8(double)>& h_of_t) {
  if (omega_r <= 0.0) return 0.0;
  const double period = constants::kTwoPi / omega_r;
  const double scale = max_abs(hd);
  double worst = 0.0;
  for (int s = 0; s < kResidualSamples; ++s) {
    const double t = period * s / kResidualSamples;
    const Mat8 h = h_of_t(t);
    double dev = 0.0;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        // (W^-1 H W)_ij = e^{+i w_i t} H_ij e^{-i w_j t}
        const double ang = (kFrameMult[i] - kFrameMult[j]) * omega_r * t;
        cplx val = std::polar(1.0, ang) * h(i, j);
        if (i == j) val -= p.hbar * kFrameMult[i] * omega_r;
        dev = std::max(dev, std::abs(val - hd(i, j)));
      }
    }
    worst = std::max(worst, dev);
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

std::array<double, kDim> dressing_frequencies(double omega_r) {
  std::array<double, kDim> w;
  for (int i = 0; i < kDim; ++i) w[static_cast<size_t>(i)] = kFrameMult[i] * omega_r;
  return w;
}

DressedLinearParts dressed_linear_parts(const MoleculeParams& p,
                                        const FieldProtocol& f) {
  const MonochromaticParts parts = decompose_monochromatic(p, f);
  DressedLinearParts out;
  for (int i = 0; i < kDim; ++i) {
    out.frame_diag[static_cast<size_t>(i)] = -p.hbar * kFrameMult[i];
    for (int j = 0; j < kDim; ++j) {
      // integer frame mismatch; only the Fourier bin that cancels it survives
      const int m = static_cast<int>(std::lround(kFrameMult[i] - kFrameMult[j]));
      cplx v = 0.0;
      if (m == 0)
        v = parts.h_u(i, j) + parts.v_s(i, j);
      else if (m == 1)
        v = parts.v_minus(i, j);
      else if (m == -1)
        v = parts.v_plus(i, j);
      out.static_part(i, j) = v;
    }
  }
  return out;
}

Mat8 dressed_matrix_at(const DressedLinearParts& parts, double omega_r) {
  Mat8 hd = parts.static_part;
  for (int i = 0; i < kDim; ++i)
    hd(i, i) += parts.frame_diag[static_cast<size_t>(i)] * omega_r;
  return hd;
}

DressedMatrix dress(const MoleculeParams& p, const FieldProtocol& f) {
  f.validate();
  if (f.omega_r == 0.0) return DressedMatrix{build_hamiltonian(p, f, 0.0).m, 0.0};
  const Mat8 hd = dressed_matrix_at(dressed_linear_parts(p, f), f.omega_r);
  const double res = residual_against(
      p, hd, f.omega_r, [&](double t) { return build_hamiltonian(p, f, t).m; });
  if (res >= kDressResidualTol) throw NonCancellation(res);
  return DressedMatrix{hd, res};
}

DressedMatrix dress_raw(const MoleculeParams& p, const RawProtocol& r) {
  r.base.validate();
  if (r.base.omega_r == 0.0)
    return DressedMatrix{build_hamiltonian_raw(p, r, 0.0).m, 0.0};
  const Mat8 hd = dressed_matrix_at(dressed_linear_parts(p, r.base), r.base.omega_r);
  const double res =
      residual_against(p, hd, r.base.omega_r,
                       [&](double t) { return build_hamiltonian_raw(p, r, t).m; });
  if (res >= kDressResidualTol) throw NonCancellation(res);
  return DressedMatrix{hd, res};
}

cplx antiperiodicity_factor(const FieldProtocol& f) {
  if (f.omega_r <= 0.0)
    throw Error("antiperiodicity_factor requires omega_r > 0");
  const double period = constants::kTwoPi / f.omega_r;
  double dev = 0.0;
  for (double w : dressing_frequencies(f.omega_r)) {
    const cplx val = std::polar(1.0, -std::fmod(w * period, 2.0 * constants::kTwoPi));
    dev = std::max(dev, std::abs(val - cplx{-1.0, 0.0}));
  }
  if (dev > 1.0e-12)
    throw Error("antiperiodicity check failed, deviation " + std::to_string(dev));
  return cplx{-1.0, 0.0};
}

}  // namespace ohphase
