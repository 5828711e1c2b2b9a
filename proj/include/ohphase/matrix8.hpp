#pragma once

// Fixed-size complex linear algebra for the 8-level OH ground manifold.
// Everything is a plain value type; no allocation, no aliasing surprises.

#include <array>
#include <cmath>
#include <complex>

namespace ohphase {

using cplx = std::complex<double>;
inline constexpr int kDim = 8;

struct Vec8 {
  std::array<cplx, kDim> v{};

  cplx& operator[](int i) { return v[static_cast<size_t>(i)]; }
  const cplx& operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

struct Mat8 {
  // row-major
  std::array<cplx, kDim * kDim> a{};

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i * kDim + j)]; }
  const cplx& operator()(int i, int j) const {
    return a[static_cast<size_t>(i * kDim + j)];
  }

  static Mat8 identity() {
    Mat8 m;
    for (int i = 0; i < kDim; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Mat8 operator+(const Mat8& x, const Mat8& y) {
  Mat8 r;
  for (int i = 0; i < kDim * kDim; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat8 operator-(const Mat8& x, const Mat8& y) {
  Mat8 r;
  for (int i = 0; i < kDim * kDim; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat8 operator*(const cplx& s, const Mat8& x) {
  Mat8 r;
  for (int i = 0; i < kDim * kDim; ++i) r.a[i] = s * x.a[i];
  return r;
}

inline Mat8 operator*(const Mat8& x, const Mat8& y) {
  Mat8 r;
  for (int i = 0; i < kDim; ++i) {
    for (int k = 0; k < kDim; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (int j = 0; j < kDim; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

inline Mat8 adjoint(const Mat8& x) {
  Mat8 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

inline Vec8 operator*(const Mat8& x, const Vec8& u) {
  Vec8 r;
  for (int i = 0; i < kDim; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < kDim; ++j) s += x(i, j) * u[j];
    r[i] = s;
  }
  return r;
}

// conjugate-linear in the first argument
inline cplx dot(const Vec8& x, const Vec8& y) {
  cplx s = 0.0;
  for (int i = 0; i < kDim; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double norm2(const Vec8& x) { return std::sqrt(std::real(dot(x, x))); }

inline double max_abs(const Mat8& x) {
  double m = 0.0;
  for (const cplx& c : x.a) m = std::max(m, std::abs(c));
  return m;
}

inline double fro_norm(const Mat8& x) {
  double s = 0.0;
  for (const cplx& c : x.a) s += std::norm(c);
  return std::sqrt(s);
}

inline double offdiag_fro(const Mat8& x) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (i != j) s += std::norm(x(i, j));
  return std::sqrt(s);
}

// max_ij |a_ij - conj(a_ji)|
inline double hermitian_defect(const Mat8& x) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      m = std::max(m, std::abs(x(i, j) - std::conj(x(j, i))));
  return m;
}

inline cplx trace(const Mat8& x) {
  cplx s = 0.0;
  for (int i = 0; i < kDim; ++i) s += x(i, i);
  return s;
}

}  // namespace ohphase
