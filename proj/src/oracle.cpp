#include "ohphase/oracle.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ohphase/constants.hpp"
#include "ohphase/eigh8.hpp"

namespace ohphase {

namespace {

using constants::kTwoPi;

constexpr int kMinSteps = 256;
constexpr double kMaxPhasePerStep = 0.1;  // rad

// infinity norm of H / hbar; constant in t for the rotating protocol
double generator_scale(const MoleculeParams& p, const FieldProtocol& f) {
  const Mat8 h = build_hamiltonian(p, f, 0.0).m;
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    double row = 0.0;
    for (int j = 0; j < kDim; ++j) row += std::abs(h(i, j));
    worst = std::max(worst, row);
  }
  return worst / p.hbar;
}

}  // namespace

Mat8 exp_i_hermitian(const Mat8& h, double c) {
  const EighResult e = eigh8(h);
  Mat8 out;
  for (int k = 0; k < kDim; ++k) {
    const cplx ph = std::polar(1.0, c * e.w[static_cast<size_t>(k)]);
    const Vec8& v = e.v[static_cast<size_t>(k)];
    for (int i = 0; i < kDim; ++i) {
      const cplx vi = ph * v[i];
      for (int j = 0; j < kDim; ++j) out(i, j) += vi * std::conj(v[j]);
    }
  }
  return out;
}

PropagatorResult propagate_period(const MoleculeParams& p,
                                  const FieldProtocol& f, int steps) {
  f.validate();
  if (f.omega_r <= 0.0) throw Error("propagate_period requires omega_r > 0");
  if (steps < kMinSteps) throw StepCountTooSmall(steps);

  const double period = kTwoPi / f.omega_r;
  const double scale = generator_scale(p, f);
  const int needed =
      static_cast<int>(std::ceil(period * scale / kMaxPhasePerStep));
  const int n = std::max(steps, needed);
  const double dt = period / n;

  Mat8 u = Mat8::identity();
  for (int k = 0; k < n; ++k) {
    const double t_mid = (k + 0.5) * dt;
    const Mat8 h = build_hamiltonian(p, f, t_mid).m;
    u = exp_i_hermitian(h, -dt / p.hbar) * u;
  }

  PropagatorResult out;
  out.u = u;
  out.step_count = n;
  out.unitarity_defect = max_abs(adjoint(u) * u - Mat8::identity());
  return out;
}

std::vector<PropagatorResult> propagate_batch(
    const MoleculeParams& p, const std::vector<FieldProtocol>& protocols,
    int steps, int threads) {
  std::vector<PropagatorResult> out(protocols.size());
  const int n = static_cast<int>(protocols.size());
  if (threads == 1) {
    for (int k = 0; k < n; ++k)
      out[static_cast<size_t>(k)] =
          propagate_period(p, protocols[static_cast<size_t>(k)], steps);
    return out;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (int k = 0; k < n; ++k)
    out[static_cast<size_t>(k)] =
        propagate_period(p, protocols[static_cast<size_t>(k)], steps);
  return out;
}

std::array<cplx, kDim> unitary_eigenvalues(const Mat8& u) {
  const Mat8 uh = adjoint(u);
  Mat8 re, im;  // (U + U^H)/2 and (U - U^H)/(2i), both Hermitian
  for (int i = 0; i < kDim * kDim; ++i) {
    re.a[static_cast<size_t>(i)] = 0.5 * (u.a[static_cast<size_t>(i)] + uh.a[static_cast<size_t>(i)]);
    im.a[static_cast<size_t>(i)] =
        cplx{0.0, -0.5} * (u.a[static_cast<size_t>(i)] - uh.a[static_cast<size_t>(i)]);
  }
  // both commute with U; a generic combination separates the eigenphases
  const double mixes[] = {0.6180339887498949, 0.3302790215316596, 1.234567891};
  for (double c : mixes) {
    Mat8 k;
    for (int i = 0; i < kDim * kDim; ++i)
      k.a[static_cast<size_t>(i)] =
          re.a[static_cast<size_t>(i)] + c * im.a[static_cast<size_t>(i)];
    const EighResult e = eigh8(k);
    std::array<cplx, kDim> vals{};
    double worst = 0.0;
    for (int j = 0; j < kDim; ++j) {
      const Vec8& v = e.v[static_cast<size_t>(j)];
      const cplx lam = dot(v, u * v);  // Rayleigh quotient
      const Vec8 uv = u * v;
      Vec8 res;
      for (int i = 0; i < kDim; ++i) res[i] = uv[i] - lam * v[i];
      worst = std::max(worst, norm2(res));
      vals[static_cast<size_t>(j)] = lam;
    }
    if (worst < 1.0e-8) return vals;
  }
  throw Error("unitary_eigenvalues: eigenphase separation failed");
}

std::array<double, kDim> quasi_energies(const PropagatorResult& r,
                                        const MoleculeParams& p,
                                        double omega_r) {
  if (omega_r <= 0.0) throw Error("quasi_energies requires omega_r > 0");
  const double period = kTwoPi / omega_r;
  const double zone = p.hbar * omega_r;
  std::array<cplx, kDim> vals = unitary_eigenvalues(r.u);
  std::array<double, kDim> eps{};
  for (int k = 0; k < kDim; ++k) {
    const double phi = std::arg(vals[static_cast<size_t>(k)]);  // (-pi, pi]
    double e = -p.hbar * (phi - constants::kPi) / period;
    e = std::fmod(e, zone);
    if (e < 0.0) e += zone;
    eps[static_cast<size_t>(k)] = e;
  }
  std::sort(eps.begin(), eps.end());
  return eps;
}

}  // namespace ohphase
