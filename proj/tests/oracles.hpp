#pragma once

// Test-only reference machinery, independent of the Jacobi implementation
// path: eigenvalues of a 4x4 complex Hermitian block via characteristic-
// polynomial root isolation (Faddeev-LeVerrier coefficients, then bisection
// between the roots of the derivative cascade).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "ohphase/matrix8.hpp"

namespace ohtest {

using ohphase::cplx;
using ohphase::Mat8;

using Mat4 = std::array<std::array<cplx, 4>, 4>;

inline Mat4 block_of(const Mat8& m, int r0, int c0) {
  Mat4 b;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(r0 + i, c0 + j);
  return b;
}

inline Mat4 mul4(const Mat4& x, const Mat4& y) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j)
        r[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            x[static_cast<size_t>(i)][static_cast<size_t>(k)] *
            y[static_cast<size_t>(k)][static_cast<size_t>(j)];
  return r;
}

inline cplx tr4(const Mat4& x) {
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i) s += x[static_cast<size_t>(i)][static_cast<size_t>(i)];
  return s;
}

// characteristic polynomial lambda^4 + c3 l^3 + c2 l^2 + c1 l + c0 by
// Faddeev-LeVerrier; coefficients are real for Hermitian input
inline std::array<double, 5> charpoly4(const Mat4& a) {
  Mat4 m{};  // M_0 = 0
  std::array<double, 5> c{};
  c[4] = 1.0;
  cplx ck = 1.0;
  for (int k = 1; k <= 4; ++k) {
    // M_k = A M_{k-1} + c_{4-k+1} I
    Mat4 am = mul4(a, m);
    for (int i = 0; i < 4; ++i)
      am[static_cast<size_t>(i)][static_cast<size_t>(i)] += ck;
    m = am;
    const cplx t = tr4(mul4(a, m));
    ck = -t / static_cast<double>(k);
    c[static_cast<size_t>(4 - k)] = std::real(ck);
  }
  return c;
}

inline double polyval(const std::vector<double>& coef, double x) {
  double v = 0.0;
  for (size_t k = coef.size(); k-- > 0;) v = v * x + coef[k];
  return v;
}

inline std::vector<double> derivative(const std::vector<double>& coef) {
  std::vector<double> d;
  for (size_t k = 1; k < coef.size(); ++k)
    d.push_back(static_cast<double>(k) * coef[k]);
  return d;
}

// all real roots of a polynomial with all-real roots (monic-ish), by
// recursive isolation on the critical points
inline std::vector<double> real_roots(const std::vector<double>& coef,
                                      double lo, double hi) {
  const size_t deg = coef.size() - 1;
  if (deg == 1) {
    const double r = -coef[0] / coef[1];
    return (r >= lo && r <= hi) ? std::vector<double>{r} : std::vector<double>{};
  }
  std::vector<double> crit = real_roots(derivative(coef), lo, hi);
  std::sort(crit.begin(), crit.end());
  std::vector<double> edges{lo};
  for (double c : crit)
    if (c > edges.back()) edges.push_back(c);
  if (hi > edges.back()) edges.push_back(hi);

  std::vector<double> roots;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    double a = edges[k], b = edges[k + 1];
    double fa = polyval(coef, a), fb = polyval(coef, b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fb == 0.0) {
      if (k + 2 == edges.size()) roots.push_back(b);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = polyval(coef, mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

// eigenvalues of a 4x4 Hermitian block, ascending
inline std::array<double, 4> charpoly_eigs4(const Mat4& a) {
  const std::array<double, 5> c = charpoly4(a);
  // Gershgorin bound
  double bound = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j)
      row += std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    bound = std::max(bound, row);
  }
  bound = bound * 1.001 + 1.0;
  std::vector<double> coef(c.begin(), c.end());
  std::vector<double> roots = real_roots(coef, -bound, bound);
  // exact multiplicities are rare for random input; pad defensively by
  // splitting the closest pair if isolation merged two roots
  while (roots.size() < 4 && !roots.empty()) roots.push_back(roots.back());
  std::sort(roots.begin(), roots.end());
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<size_t>(i)] = roots[static_cast<size_t>(i)];
  return out;
}

}  // namespace ohtest
