#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ohphase/dressing.hpp"
#include "ohphase/eigh8.hpp"

using namespace ohphase;
using namespace ohtest;

namespace {

Mat8 random_hermitian(std::mt19937& rng, bool block_diagonal) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat8 a;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (block_diagonal && (i < 4) != (j < 4)) continue;
      a(i, j) = cplx{n(rng), n(rng)};
    }
  Mat8 h = a + adjoint(a);
  return h;
}

Mat8 random_unitary(std::mt19937& rng) {
  // eigenvectors of a random Hermitian matrix form a unitary
  const EighResult e = eigh8(random_hermitian(rng, false));
  Mat8 u;
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k) u(i, k) = e.v[static_cast<size_t>(k)][i];
  return u;
}

}  // namespace

TEST_CASE("diagonal doublet matrix is returned unchanged") {
  const MoleculeParams p = oh();
  Mat8 h;
  const double hd2 = 0.5 * p.hbar * p.delta;
  for (int i = 0; i < kDim; ++i) h(i, i) = i < 4 ? -hd2 : hd2;
  const EighResult e = eigh8(h);
  CHECK(e.sweeps == 0);
  for (int k = 0; k < kDim; ++k)
    CHECK(e.w[static_cast<size_t>(k)] == doctest::Approx(k < 4 ? -hd2 : hd2).epsilon(1e-15));
}

TEST_CASE("pure-B dressed matrix reproduces the closed-form spectrum") {
  const MoleculeParams p = oh();
  FieldProtocol f = fig1b(1.0e9);
  const DressedMatrix hd = dress(p, f);
  const EighResult e = eigh8(hd.m);

  const DerivedFrequencies d = derived_frequencies(p, f);
  const double root =
      std::sqrt(d.omega_l * d.omega_l + f.omega_r * f.omega_r -
                2.0 * d.omega_l * f.omega_r * std::cos(f.theta_m));
  std::array<double, kDim> expect;
  int idx = 0;
  for (int eps = -1; eps <= 1; eps += 2)
    for (int m2 = -3; m2 <= 3; m2 += 2)
      expect[static_cast<size_t>(idx++)] =
          0.5 * eps * p.hbar * p.delta + 0.5 * m2 * p.hbar * root;
  std::sort(expect.begin(), expect.end());
  double scale = 0.0;
  for (double x : expect) scale = std::max(scale, std::abs(x));
  for (int k = 0; k < kDim; ++k)
    CHECK(std::abs(e.w[static_cast<size_t>(k)] - expect[static_cast<size_t>(k)]) <
          1e-12 * scale);
}

TEST_CASE("block-diagonal random Hermitian matches the char-poly oracle") {
  std::mt19937 rng(21u);
  for (int trial = 0; trial < 25; ++trial) {
    const Mat8 h = random_hermitian(rng, true);
    const EighResult e = eigh8(h);

    const std::array<double, 4> top = charpoly_eigs4(block_of(h, 0, 0));
    const std::array<double, 4> bot = charpoly_eigs4(block_of(h, 4, 4));
    std::array<double, kDim> expect;
    for (int i = 0; i < 4; ++i) {
      expect[static_cast<size_t>(i)] = top[static_cast<size_t>(i)];
      expect[static_cast<size_t>(4 + i)] = bot[static_cast<size_t>(i)];
    }
    std::sort(expect.begin(), expect.end());
    double scale = 0.0;
    for (double x : expect) scale = std::max(scale, std::abs(x));
    for (int k = 0; k < kDim; ++k)
      CHECK(std::abs(e.w[static_cast<size_t>(k)] - expect[static_cast<size_t>(k)]) <
            1e-10 * scale);
  }
}

TEST_CASE("eigenvalues invariant under random unitary conjugation") {
  std::mt19937 rng(22u);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat8 h = random_hermitian(rng, false);
    const Mat8 u = random_unitary(rng);
    const Mat8 hc = u * h * adjoint(u);
    const EighResult a = eigh8(h);
    const EighResult b = eigh8(hc);
    double scale = 0.0;
    for (double x : a.w) scale = std::max(scale, std::abs(x));
    for (int k = 0; k < kDim; ++k)
      CHECK(std::abs(a.w[static_cast<size_t>(k)] - b.w[static_cast<size_t>(k)]) <
            1e-12 * scale);
  }
}

TEST_CASE("trace is preserved and vectors stay orthonormal") {
  std::mt19937 rng(23u);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat8 h = random_hermitian(rng, false);
    const EighResult e = eigh8(h);
    double sum = 0.0, scale = 0.0;
    for (double x : e.w) {
      sum += x;
      scale = std::max(scale, std::abs(x));
    }
    CHECK(std::abs(sum - std::real(trace(h))) < 1e-12 * scale);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        const cplx g = dot(e.v[static_cast<size_t>(i)], e.v[static_cast<size_t>(j)]);
        CHECK(std::abs(g - (i == j ? cplx{1.0} : cplx{0.0})) < 1e-12);
      }
    for (int k = 0; k < kDim; ++k) {
      const Vec8 hv = h * e.v[static_cast<size_t>(k)];
      Vec8 r;
      for (int i = 0; i < kDim; ++i)
        r[i] = hv[i] - e.w[static_cast<size_t>(k)] * e.v[static_cast<size_t>(k)][i];
      CHECK(norm2(r) < 1e-12 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("grossly non-Hermitian input is rejected") {
  Mat8 bad;
  for (int i = 0; i < kDim; ++i) {
    bad(i, i) = static_cast<double>(i);
    if (i + 1 < kDim) bad(i, i + 1) = 1.0;  // upper shift, no mirror
  }
  CHECK_THROWS_AS(eigh8(bad), ConvergenceFailure);
}
