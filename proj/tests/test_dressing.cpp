#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ohphase/constants.hpp"
#include "ohphase/dressing.hpp"

using namespace ohphase;
using namespace ohtest;
using constants::kPi;

TEST_CASE("pure magnetic dressed matrix matches the closed block form") {
  const MoleculeParams p = oh();
  FieldProtocol f = fig1b(2.0e9);
  const DressedMatrix d = dress(p, f);
  CHECK(d.residual < kDressResidualTol);

  const double hd2 = 0.5 * p.hbar * p.delta;
  const double bc = p.mu_b * f.b_mag * std::cos(f.theta_m);
  const double bl = p.mu_b * f.b_mag * std::sin(f.theta_m);
  const double s3 = 2.0 * std::sqrt(3.0) / 5.0;

  // P' diagonal: (3/2, 1/2, -1/2, -3/2) hbar w - hbar Delta/2 + Zeeman
  const double wdiag[4] = {1.5, 0.5, -0.5, -1.5};
  const double zee[4] = {-1.2, -0.4, 0.4, 1.2};
  for (int r = 0; r < 4; ++r) {
    const double want = wdiag[r] * p.hbar * f.omega_r - hd2 + zee[r] * bc;
    CHECK(std::real(d.m(r, r)) == doctest::Approx(want).epsilon(1e-14));
    // R' = P' + hbar Delta I
    CHECK(std::real(d.m(4 + r, 4 + r)) ==
          doctest::Approx(want + p.hbar * p.delta).epsilon(1e-14));
  }
  CHECK(std::real(d.m(0, 1)) == doctest::Approx(s3 * bl).epsilon(1e-14));
  CHECK(std::real(d.m(1, 2)) == doctest::Approx(0.8 * bl).epsilon(1e-14));
  CHECK(std::real(d.m(2, 3)) == doctest::Approx(s3 * bl).epsilon(1e-14));

  // e-f blocks exactly zero for a pure magnetic protocol
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(d.m(i, 4 + j)) == 0.0);
      CHECK(std::abs(d.m(4 + i, j)) == 0.0);
    }
}

TEST_CASE("pure electric dressed matrix has diagonal P' and the Stark block") {
  const MoleculeParams p = oh();
  FieldProtocol f = fig2(1, 3.0e9);
  const DressedMatrix d = dress(p, f);

  const double hd2 = 0.5 * p.hbar * p.delta;
  const double ec = p.mu_e * f.e_mag * std::cos(f.theta_e);
  const double el = p.mu_e * f.e_mag * std::sin(f.theta_e);
  const double s3 = std::sqrt(3.0) / 5.0;
  const double wdiag[4] = {1.5, 0.5, -0.5, -1.5};
  for (int r = 0; r < 4; ++r) {
    CHECK(std::real(d.m(r, r)) ==
          doctest::Approx(wdiag[r] * p.hbar * f.omega_r - hd2).epsilon(1e-14));
    for (int c = 0; c < 4; ++c)
      if (r != c) CHECK(std::abs(d.m(r, c)) == 0.0);
  }
  const double qdiag[4] = {0.6, 0.2, -0.2, -0.6};
  for (int r = 0; r < 4; ++r)
    CHECK(std::real(d.m(r, 4 + r)) == doctest::Approx(qdiag[r] * ec).epsilon(1e-14));
  CHECK(std::real(d.m(0, 5)) == doctest::Approx(-s3 * el).epsilon(1e-14));
  CHECK(std::real(d.m(1, 6)) == doctest::Approx(-0.4 * el).epsilon(1e-14));
  CHECK(std::real(d.m(2, 7)) == doctest::Approx(-s3 * el).epsilon(1e-14));
  // Q' is symmetric across the anti-block
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(d.m(i, 4 + j) - d.m(4 + j, i)) == 0.0);
}

TEST_CASE("zero rotation returns the static Hamiltonian with zero residual") {
  const MoleculeParams p = oh();
  FieldProtocol f = fig3(2, 0.0);
  const DressedMatrix d = dress(p, f);
  CHECK(d.residual == 0.0);
  CHECK(max_abs(d.m - build_hamiltonian(p, f, 0.0).m) == 0.0);
}

TEST_CASE("residual certificate holds across random co-rotating protocols") {
  const MoleculeParams p = oh();
  std::mt19937 rng(31u);
  for (int trial = 0; trial < 30; ++trial) {
    const FieldProtocol f = random_combined(rng);
    const DressedMatrix d = dress(p, f);
    CHECK(d.residual < kDressResidualTol);
    CHECK(hermitian_defect(d.m) / max_abs(d.m) < 1e-14);
  }
}

TEST_CASE("frame frequencies are half-odd-integer multiples of omega_r") {
  const std::array<double, kDim> w = dressing_frequencies(2.0e9);
  const double want[kDim] = {-1.5, -0.5, 0.5, 1.5, -1.5, -0.5, 0.5, 1.5};
  for (int i = 0; i < kDim; ++i)
    CHECK(w[static_cast<size_t>(i)] == want[i] * 2.0e9);
}

TEST_CASE("antiperiodicity factor is exactly -1") {
  FieldProtocol f;
  f.omega_r = 1.0e9;
  CHECK(antiperiodicity_factor(f) == cplx{-1.0, 0.0});
  f.omega_r = 13.0e9;
  CHECK(antiperiodicity_factor(f) == cplx{-1.0, 0.0});
  f.omega_r = 7.372915e10;
  CHECK(antiperiodicity_factor(f) == cplx{-1.0, 0.0});
  f.omega_r = 0.0;
  CHECK_THROWS_AS(antiperiodicity_factor(f), Error);
}

TEST_CASE("bichromatic protocols are rejected via NonCancellation") {
  const MoleculeParams p = oh();
  FieldProtocol f = fig3(2, 5.0e9);
  RawProtocol raw{f, 1.7};
  CHECK_THROWS_AS(dress_raw(p, raw), NonCancellation);

  RawProtocol same_rate{f, 1.0};
  const DressedMatrix d = dress_raw(p, same_rate);
  CHECK(d.residual < kDressResidualTol);
}
