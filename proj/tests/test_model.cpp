#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ohphase/constants.hpp"
#include "ohphase/model.hpp"

using namespace ohphase;
using namespace ohtest;
using constants::kTwoPi;

TEST_CASE("zero fields give the bare lambda doublet") {
  const MoleculeParams p = oh();
  const FieldProtocol f{};
  const Mat8 h = build_hamiltonian(p, f, 0.37).m;
  const double hd2 = 0.5 * p.hbar * p.delta;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (i == j)
        CHECK(std::real(h(i, j)) == doctest::Approx(i < 4 ? -hd2 : hd2).epsilon(1e-15));
      else
        CHECK(std::abs(h(i, j)) == 0.0);
    }
}

TEST_CASE("aligned magnetic field is diagonal with the printed coefficients") {
  const MoleculeParams p = oh();
  FieldProtocol f;
  f.b_mag = 0.1;
  f.theta_m = 0.0;
  const Mat8 h = build_hamiltonian(p, f, 0.0).m;
  const double hd2 = 0.5 * p.hbar * p.delta;
  const double coef[4] = {-1.2, -0.4, 0.4, 1.2};
  for (int r = 0; r < 4; ++r) {
    CHECK(std::real(h(r, r)) ==
          doctest::Approx(-hd2 + coef[r] * p.mu_b * 0.1).epsilon(1e-15));
    CHECK(std::real(h(4 + r, 4 + r)) ==
          doctest::Approx(hd2 + coef[r] * p.mu_b * 0.1).epsilon(1e-15));
  }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (i != j) CHECK(std::abs(h(i, j)) == 0.0);

  SUBCASE("Zeeman trace: the e-block diagonal sums to -2 hbar Delta") {
    cplx tr = 0.0;
    for (int r = 0; r < 4; ++r) tr += h(r, r);
    CHECK(std::real(tr) == doctest::Approx(-2.0 * p.hbar * p.delta).epsilon(1e-14));
  }
}

TEST_CASE("half a period flips x components and zeroes y components") {
  const MoleculeParams p = oh();
  FieldProtocol f;
  f.b_mag = 0.1;
  f.theta_m = constants::kPi / 8.0;
  f.e_mag = 2.0e5;
  f.theta_e = constants::kPi / 8.0;
  f.omega_r = 1.0e9;
  const double half_period = constants::kPi / f.omega_r;
  const Mat8 got = build_hamiltonian(p, f, half_period).m;

  FieldComponents c = fields_at(f, 0.0);
  c.bx = -c.bx;
  c.by = 0.0;
  c.ex = -c.ex;
  c.ey = 0.0;
  const Mat8 want = build_from_components(p, c).m;
  const double scale = max_abs(want);
  CHECK(max_abs(got - want) / scale < 1e-12);
}

TEST_CASE("hermiticity and periodicity over random protocols") {
  const MoleculeParams p = oh();
  std::mt19937 rng(11u);
  for (int trial = 0; trial < 40; ++trial) {
    const FieldProtocol f = random_combined(rng);
    std::uniform_real_distribution<double> tdist(0.0, 4.0 * kTwoPi / f.omega_r);
    const double t = tdist(rng);
    const Mat8 h = build_hamiltonian(p, f, t).m;
    CHECK(hermitian_defect(h) / max_abs(h) < 1e-14);
    const Mat8 hT = build_hamiltonian(p, f, t + kTwoPi / f.omega_r).m;
    CHECK(max_abs(hT - h) / max_abs(h) < 1e-12);
  }
}

TEST_CASE("block structure separates magnetic and electric terms") {
  const MoleculeParams p = oh();
  FieldProtocol fb;
  fb.b_mag = 0.3;
  fb.theta_m = 1.1;
  fb.omega_r = 2.0e9;
  const Mat8 hb = build_hamiltonian(p, fb, 0.21e-9).m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(hb(i, 4 + j)) == 0.0);

  FieldProtocol fe;
  fe.e_mag = 5.0e5;
  fe.theta_e = 0.7;
  fe.omega_r = 2.0e9;
  const Mat8 he = build_hamiltonian(p, fe, 0.13e-9).m;
  const double hd2 = 0.5 * p.hbar * p.delta;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) {
        CHECK(std::real(he(i, j)) == -hd2);
        CHECK(std::real(he(4 + i, 4 + j)) == hd2);
      } else {
        CHECK(std::abs(he(i, j)) == 0.0);
        CHECK(std::abs(he(4 + i, 4 + j)) == 0.0);
      }
    }
}

TEST_CASE("monochromatic decomposition") {
  const MoleculeParams p = oh();

  SUBCASE("pure magnetic: V_s vanishes, ladders carry only mu_B B sin(theta)") {
    FieldProtocol f;
    f.b_mag = 0.2;
    f.theta_m = 0.9;
    f.omega_r = 1.0e9;
    const MonochromaticParts parts = decompose_monochromatic(p, f);
    CHECK(max_abs(parts.v_s) == 0.0);
    const double bl = 0.2 * std::sin(0.9);
    CHECK(std::abs(parts.v_plus(0, 1)) ==
          doctest::Approx(2.0 * std::sqrt(3.0) / 5.0 * p.mu_b * bl).epsilon(1e-15));
    CHECK(std::abs(parts.v_plus(1, 2)) ==
          doctest::Approx(0.8 * p.mu_b * bl).epsilon(1e-15));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(parts.v_plus(i, 4 + j)) == 0.0);
        CHECK(std::abs(parts.v_plus(4 + i, j)) == 0.0);
      }
  }

  SUBCASE("aligned fields: no rotating part at all") {
    FieldProtocol f;
    f.b_mag = 0.2;
    f.e_mag = 3.0e5;
    f.omega_r = 1.0e9;
    const MonochromaticParts parts = decompose_monochromatic(p, f);
    CHECK(max_abs(parts.v_plus) == 0.0);
    CHECK(max_abs(parts.v_minus) == 0.0);
    const Mat8 h0 = build_hamiltonian(p, f, 0.0).m;
    const Mat8 h1 = build_hamiltonian(p, f, 0.4e-9).m;
    CHECK(max_abs(h1 - h0) == 0.0);
  }

  SUBCASE("reconstruction identity at sampled times") {
    std::mt19937 rng(7u);
    std::vector<FieldProtocol> protocols{fig3(2, 3.0e9)};
    for (int k = 0; k < 8; ++k) protocols.push_back(random_combined(rng));
    for (const FieldProtocol& f : protocols) {
      const MonochromaticParts parts = decompose_monochromatic(p, f);
      CHECK(max_abs(parts.v_plus - adjoint(parts.v_minus)) == 0.0);
      double scale = max_abs(build_hamiltonian(p, f, 0.0).m);
      for (int s = 0; s < 10; ++s) {
        const double t = s * kTwoPi / f.omega_r / 10.0;
        const Mat8 want = build_hamiltonian(p, f, t).m;
        const cplx em = std::polar(1.0, -f.omega_r * t);
        const Mat8 got = parts.h_u + parts.v_s + em * parts.v_minus +
                         std::conj(em) * parts.v_plus;
        CHECK(max_abs(got - want) / scale < 1e-14);
      }
    }
  }
}

TEST_CASE("derived frequencies") {
  const MoleculeParams p = oh();

  SUBCASE("Larmor frequency at 0.1 T") {
    FieldProtocol f;
    f.b_mag = 0.1;
    const DerivedFrequencies d = derived_frequencies(p, f);
    // (4/5) mu_B B / hbar with CODATA values
    const double expect = 0.8 * constants::kBohrMagneton * 0.1 / constants::kHbar;
    CHECK(d.omega_l == doctest::Approx(expect).epsilon(1e-15));
    CHECK(d.omega_l == doctest::Approx(7.0353e9).epsilon(1e-4));
    CHECK(d.omega_e == 0.0);
  }

  SUBCASE("electric analogue at 2 kV/cm") {
    FieldProtocol f;
    f.e_mag = 2.0e5;
    const DerivedFrequencies d = derived_frequencies(p, f);
    const double expect =
        1.667 * 3.33564e-30 * 2.0e5 / constants::kHbar;
    CHECK(d.omega_e == doctest::Approx(expect).epsilon(1e-15));
    CHECK(d.omega_e == doctest::Approx(1.0546e10).epsilon(1e-4));
    CHECK(d.omega_l == 0.0);
  }

  SUBCASE("zero field gives zero frequency") {
    const DerivedFrequencies d = derived_frequencies(p, FieldProtocol{});
    CHECK(d.omega_l == 0.0);
    CHECK(d.omega_e == 0.0);
  }
}

TEST_CASE("validity warnings fire only for weak nonzero fields") {
  FieldProtocol f;
  CHECK(f.validity_warnings().empty());
  f.b_mag = 0.005;  // 50 G
  CHECK(f.validity_warnings().size() == 1);
  f.e_mag = 0.5e5;  // 0.5 kV/cm
  CHECK(f.validity_warnings().size() == 2);
  f.b_mag = 0.1;
  f.e_mag = 2.0e5;
  CHECK(f.validity_warnings().empty());
}

TEST_CASE("parameter validation") {
  MoleculeParams p = oh();
  p.delta = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  FieldProtocol f;
  f.b_mag = -1.0;
  CHECK_THROWS_AS(f.validate(), Error);
  f.b_mag = 0.0;
  f.theta_m = 4.0;
  CHECK_THROWS_AS(f.validate(), Error);
}
