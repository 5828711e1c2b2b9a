#include "ohphase/floquet_pt.hpp"

#include <cmath>

#include "ohphase/constants.hpp"
#include "ohphase/phase.hpp"

namespace ohphase {

namespace {

using constants::kTwoPi;

constexpr int kTopState = 7;  // (M = 3/2, f): most energetic bare state

void require_nondegenerate(const FieldProtocol& f) {
  if (f.b_mag <= 0.0) throw DegenerateBareSpectrum();
}

}  // namespace

double pt2_closed_form(double delta, double omega_l, double omega_e,
                       double theta_m, double theta_e) {
  const double tm = std::tan(theta_m);
  const double es = omega_e * std::sin(theta_e);
  // The electric denominator is 5(Delta + omega_L cos theta_m): the bare gap
  // E(3/2,f) - E(1/2,e) equals hbar(Delta + omega_L cos theta_m), and the
  // second-order sum reproduces exactly this form.
  const double den = 5.0 * (delta + omega_l * std::cos(theta_m));
  return kTwoPi * (0.75 * tm * tm + 3.0 * es * es / (den * den));
}

double pt3_closed_form(double delta, double omega_l, double omega_e,
                       double theta_m, double theta_e, bool omega_l_squared) {
  if (omega_e == 0.0) return 0.0;
  const double c = std::cos(theta_m);
  const double wl_term =
      omega_l_squared ? 1.5 * omega_l * omega_l * c * c : 1.5 * omega_l * c * c;
  const double num = 25.0 * delta * delta + 10.0 * delta * omega_l * c + wl_term;
  const double den = 5.0 * delta + omega_l * c;
  return kTwoPi * std::sin(theta_m) * std::sin(2.0 * theta_e) *
         (2.0 * omega_e * omega_e / (5.0 * delta * omega_l)) * num /
         (den * den * den);
}

double pt2_phase(const MoleculeParams& p, const FieldProtocol& f) {
  require_nondegenerate(f);
  const DerivedFrequencies d = derived_frequencies(p, f);
  return pt2_closed_form(p.delta, d.omega_l, d.omega_e, f.theta_m, f.theta_e);
}

double pt3_phase(const MoleculeParams& p, const FieldProtocol& f,
                 bool omega_l_squared) {
  require_nondegenerate(f);
  const DerivedFrequencies d = derived_frequencies(p, f);
  return pt3_closed_form(p.delta, d.omega_l, d.omega_e, f.theta_m, f.theta_e,
                         omega_l_squared);
}

PerturbationResult pt_result(const MoleculeParams& p, const FieldProtocol& f,
                             bool pt3_omega_l_squared) {
  PerturbationResult r;
  r.nondegenerate_ok = f.b_mag > 0.0;
  r.small_angle_ok = f.theta_m <= kSmallAngleWarn && f.theta_e <= kSmallAngleWarn;
  r.order2_phase = pt2_phase(p, f);
  r.order3_phase = pt3_phase(p, f, pt3_omega_l_squared);
  return r;
}

double quasi_energy_shift2(const MoleculeParams& p, const FieldProtocol& f,
                           int state, double omega_r) {
  require_nondegenerate(f);
  const MonochromaticParts parts = decompose_monochromatic(p, f);
  const int n = state;
  const double en = std::real(parts.h_u(n, n));
  double shift = 0.0;
  for (int m = 0; m < kDim; ++m) {
    if (m == n) continue;
    const double em = std::real(parts.h_u(m, m));
    const double vs2 = std::norm(parts.v_s(m, n));
    const double vm2 = std::norm(parts.v_minus(m, n));
    const double vp2 = std::norm(parts.v_plus(m, n));
    if (vs2 > 0.0) shift += vs2 / (en - em);
    if (vm2 > 0.0) shift += vm2 / (en - em + p.hbar * omega_r);
    if (vp2 > 0.0) shift += vp2 / (en - em - p.hbar * omega_r);
  }
  return shift;
}

double pt2_sum_phase(const MoleculeParams& p, const FieldProtocol& f,
                     int state) {
  require_nondegenerate(f);
  const MonochromaticParts parts = decompose_monochromatic(p, f);
  const int n = state;
  const double en = std::real(parts.h_u(n, n));
  // adiabatic limit of (2 pi / (hbar w)) [shift2(w) - shift2(0)]: the static
  // V_s terms drop and the +-hbar*w denominators contribute -+ derivatives
  double sum = 0.0;
  for (int m = 0; m < kDim; ++m) {
    if (m == n) continue;
    const double gap = en - std::real(parts.h_u(m, m));
    const double vp2 = std::norm(parts.v_plus(m, n));
    const double vm2 = std::norm(parts.v_minus(m, n));
    if (vp2 > 0.0) sum += vp2 / (gap * gap);
    if (vm2 > 0.0) sum -= vm2 / (gap * gap);
  }
  return kTwoPi * sum;
}

double pt2_sum_phase(const MoleculeParams& p, const FieldProtocol& f) {
  return pt2_sum_phase(p, f, kTopState);
}

double first_order_shift(const MoleculeParams& p, const FieldProtocol& f,
                         int state) {
  const MonochromaticParts parts = decompose_monochromatic(p, f);
  return std::real(parts.v_s(state, state) + parts.v_minus(state, state) +
                   parts.v_plus(state, state));
}

std::vector<PtExactRow> pt_vs_exact_report(const MoleculeParams& p,
                                           const FieldProtocol& base,
                                           const std::vector<double>& angles) {
  std::vector<PtExactRow> rows;
  rows.reserve(angles.size());
  const StateLabel top{3, Parity::f};
  for (double theta : angles) {
    FieldProtocol f = base;
    f.theta_m = theta;
    f.theta_e = base.e_mag > 0.0 ? theta : 0.0;
    PtExactRow row;
    row.theta = theta;
    if (theta == 0.0) {
      row.pt = 0.0;
      row.exact = 0.0;
      row.residual = 0.0;
      rows.push_back(row);
      continue;
    }
    row.pt = pt2_phase(p, f);
    if (f.e_mag > 0.0) row.pt += pt3_phase(p, f);
    const BerryLimits limits = berry_limit(p, f);
    // +2 pi M offset maps the subtraction convention onto the PT convention
    row.exact = limits.geometric[static_cast<size_t>(top.slot())] +
                kTwoPi * 1.5;
    row.residual = std::abs(row.pt - row.exact);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ohphase
