#include "ohphase/eigh8.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ohphase {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1.0e-15;

// One unitary rotation in the (p, q) plane annihilating the Hermitian part of
// a(p, q). The full similarity transform is applied, so an anti-Hermitian
// residue survives rotations and keeps the off-diagonal norm from converging.
void rotate(Mat8& a, Mat8& vecs, int p, int q) {
  const cplx apq = 0.5 * (a(p, q) + std::conj(a(q, p)));
  const double r = std::abs(apq);
  if (r == 0.0) return;

  const cplx u = apq / r;  // unit phase
  const double app = std::real(a(p, p));
  const double aqq = std::real(a(q, q));
  const double tau = (aqq - app) / (2.0 * r);
  // smaller-magnitude root of t^2 - 2 tau t - 1 = 0, |theta| <= pi/4
  const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cplx s = t * c * u;  // complex "sine" carrying the phase of a_pq

  // A <- J^H A J with J(p,p)=c, J(p,q)=-conj(s)... columns first, then rows.
  for (int k = 0; k < kDim; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp + std::conj(s) * akq;
    a(k, q) = -s * akp + c * akq;
  }
  for (int k = 0; k < kDim; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk + s * aqk;
    a(q, k) = -std::conj(s) * apk + c * aqk;
  }
  for (int k = 0; k < kDim; ++k) {
    const cplx vkp = vecs(k, p);
    const cplx vkq = vecs(k, q);
    vecs(k, p) = c * vkp + std::conj(s) * vkq;
    vecs(k, q) = -s * vkp + c * vkq;
  }
}

}  // namespace

EighResult eigh8(const Mat8& h) {
  Mat8 a = h;
  Mat8 vecs = Mat8::identity();
  const double fro = fro_norm(h);
  const double target = kConvergence * fro;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_fro(a) <= target) break;
    for (int p = 0; p < kDim - 1; ++p)
      for (int q = p + 1; q < kDim; ++q) rotate(a, vecs, p, q);
  }
  if (sweep == kMaxSweeps && offdiag_fro(a) > target)
    throw ConvergenceFailure(
        "eigh8: no convergence after 100 sweeps (non-Hermitian input?)");

  std::array<int, kDim> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });

  EighResult out;
  out.sweeps = sweep;
  for (int k = 0; k < kDim; ++k) {
    const int src = order[k];
    out.w[static_cast<size_t>(k)] = std::real(a(src, src));
    Vec8 v;
    for (int i = 0; i < kDim; ++i) v[i] = vecs(i, src);
    // fix the global phase: largest component real and positive
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < kDim; ++i) {
      const double m = std::abs(v[i]);
      if (m > amax + 1e-15) {
        amax = m;
        imax = i;
      }
    }
    if (amax > 0.0) {
      const cplx ph = std::conj(v[imax]) / std::abs(v[imax]);
      for (int i = 0; i < kDim; ++i) v[i] *= ph;
    }
    out.v[static_cast<size_t>(k)] = v;
  }
  return out;
}

}  // namespace ohphase
