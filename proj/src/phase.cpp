#include "ohphase/phase.hpp"

#include <algorithm>
#include <cmath>

#include "ohphase/constants.hpp"
#include "ohphase/dressing.hpp"

namespace ohphase {

namespace {

using constants::kTwoPi;

constexpr double kValidityRatio = 0.1;  // operational reading of "<<"

// Labeled energies at +-h around omega_r = 0 for the centered difference.
// H_d(omega) is exactly linear in omega, so negative omega is well defined.
struct LimitPair {
  std::array<double, kDim> e_plus{}, e_minus{};  // label-slot order
};

LimitPair labeled_limit_pair(const MoleculeParams& p, const FieldProtocol& f,
                             double h) {
  FieldProtocol probe = f;
  probe.omega_r = 0.0;

  // labels at +h via the sweep seeding rules; -h linked by overlap (the
  // eigenvectors of static_part -+ h K differ only at O(h))
  TrackedSweep stub = track_sweep(p, probe, std::vector<double>{h});
  const DressedSpectrum& sp = stub.spectra.front();
  const DressedLinearParts parts = dressed_linear_parts(p, probe);
  const DressedSpectrum sm = eigh_spectrum(dressed_matrix_at(parts, -h));

  LimitPair out;
  for (int i = 0; i < kDim; ++i)
    out.e_plus[static_cast<size_t>(sp.label[static_cast<size_t>(i)].slot())] =
        sp.energy[static_cast<size_t>(i)];
  const std::array<int, kDim> perm = overlap_assignment(sp.vec, sm.vec);
  for (int i = 0; i < kDim; ++i)
    out.e_minus[static_cast<size_t>(sp.label[static_cast<size_t>(i)].slot())] =
        sm.energy[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  return out;
}

}  // namespace

double omega_floor(const MoleculeParams& p, const FieldProtocol& f) {
  const DerivedFrequencies d = derived_frequencies(p, f);
  return 1.0e-6 * std::max({d.omega_l, d.omega_e, p.delta});
}

BerryLimits berry_limit(const MoleculeParams& p, const FieldProtocol& f) {
  const double h = omega_floor(p, f);
  const LimitPair pair = labeled_limit_pair(p, f, h);
  BerryLimits out;
  for (int s = 0; s < kDim; ++s)
    out.geometric[static_cast<size_t>(s)] =
        kTwoPi *
        (pair.e_plus[static_cast<size_t>(s)] - pair.e_minus[static_cast<size_t>(s)]) /
        (2.0 * h * p.hbar);
  return out;
}

PhaseRecord geometric_phase(const MoleculeParams& p, const FieldProtocol& f,
                            const DressedSpectrum& at_omega,
                            const DressedSpectrum& at_zero, double omega_r) {
  if (!at_omega.labeled || !at_zero.labeled)
    throw LabelMismatch("geometric_phase requires labeled spectra");
  for (int i = 0; i < kDim; ++i) {
    bool found = false;
    for (int j = 0; j < kDim; ++j)
      if (at_zero.label[static_cast<size_t>(j)] ==
          at_omega.label[static_cast<size_t>(i)])
        found = true;
    if (!found)
      throw LabelMismatch("spectra carry different label sets");
  }

  PhaseRecord rec;
  rec.omega_r = omega_r;
  const double floor = omega_floor(p, f);
  BerryLimits limits;
  const bool use_limit = omega_r <= floor;
  if (use_limit) limits = berry_limit(p, f);

  const double period_phase = omega_r > 0.0 ? kTwoPi / omega_r : 0.0;
  for (int i = 0; i < kDim; ++i) {
    const StateLabel l = at_omega.label[static_cast<size_t>(i)];
    StatePhase sp;
    sp.label = l;
    double e0 = 0.0;
    for (int j = 0; j < kDim; ++j)
      if (at_zero.label[static_cast<size_t>(j)] == l)
        e0 = at_zero.energy[static_cast<size_t>(j)];
    sp.total = at_omega.energy[static_cast<size_t>(i)] * period_phase / p.hbar;
    sp.dynamical = e0 * period_phase / p.hbar;
    sp.geometric = use_limit ? limits.geometric[static_cast<size_t>(l.slot())]
                             : sp.total - sp.dynamical;
    rec.states[static_cast<size_t>(l.slot())] = sp;
  }
  return rec;
}

std::vector<PhaseRecord> phases_on_sweep(const TrackedSweep& sweep) {
  std::vector<PhaseRecord> out;
  out.reserve(sweep.grid.size());
  const double floor = omega_floor(sweep.params, sweep.fields);
  BerryLimits limits;
  bool have_limits = false;
  for (size_t k = 0; k < sweep.grid.size(); ++k) {
    const double w = sweep.grid[k];
    if (w <= floor && !have_limits) {
      limits = berry_limit(sweep.params, sweep.fields);
      have_limits = true;
    }
    PhaseRecord rec;
    rec.omega_r = w;
    const double period_phase = w > 0.0 ? kTwoPi / w : 0.0;
    for (int s = 0; s < kDim; ++s) {
      const StateLabel l = label_from_slot(s);
      StatePhase sp;
      sp.label = l;
      const double e = sweep.energy_at(static_cast<int>(k), l);
      const double e0 = sweep.zero_energy(l);
      sp.total = e * period_phase / sweep.params.hbar;
      sp.dynamical = e0 * period_phase / sweep.params.hbar;
      sp.geometric = (w <= floor) ? limits.geometric[static_cast<size_t>(s)]
                                  : sp.total - sp.dynamical;
      rec.states[static_cast<size_t>(s)] = sp;
    }
    out.push_back(rec);
  }
  return out;
}

double magnetic_phase_per_unit_m(const MoleculeParams& p,
                                 const FieldProtocol& f, double omega_r) {
  if (f.e_mag != 0.0) throw NotPureMagnetic();
  const double wl = derived_frequencies(p, f).omega_l;
  const double c = std::cos(f.theta_m);
  const double root =
      std::sqrt(wl * wl + omega_r * omega_r - 2.0 * wl * omega_r * c);
  // (sqrt(...) - wl) * 2pi / w rewritten to stay finite and exact at the zero
  return kTwoPi * (omega_r - 2.0 * wl * c) / (root + wl);
}

std::array<double, 4> magnetic_phase_closed_form(const MoleculeParams& p,
                                                 const FieldProtocol& f,
                                                 double omega_r) {
  const double per_m = magnetic_phase_per_unit_m(p, f, omega_r);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k)
    out[static_cast<size_t>(k)] = 0.5 * (2 * k - 3) * per_m;
  return out;
}

double critical_rotation_magnetic(const MoleculeParams& p,
                                  const FieldProtocol& f) {
  if (f.e_mag != 0.0) throw NotPureMagnetic();
  if (f.theta_m >= 0.5 * constants::kPi) throw NoCriticalRate();
  return 2.0 * derived_frequencies(p, f).omega_l * std::cos(f.theta_m);
}

Expansion asymptotic_phases(const MoleculeParams& p, const FieldProtocol& f,
                            Regime regime) {
  const DerivedFrequencies d = derived_frequencies(p, f);
  const double wr = f.omega_r;
  Expansion out;
  switch (regime) {
    case Regime::magnetic_adiabatic: {
      out.berry = -kTwoPi * std::cos(f.theta_m);
      const double s2 = std::sin(f.theta_m) * std::sin(f.theta_m);
      out.slope = d.omega_l > 0.0 ? kTwoPi * s2 / (2.0 * d.omega_l) : 0.0;
      if (f.e_mag != 0.0) {
        out.valid = false;
        out.warning = "magnetic expansion with E != 0";
      } else if (wr > kValidityRatio * d.omega_l) {
        out.valid = false;
        out.warning = "omega_r not << omega_L";
      }
      return out;
    }
    case Regime::magnetic_fast: {
      out.berry = kTwoPi;
      out.slope = -kTwoPi * (1.0 + std::cos(f.theta_m)) * d.omega_l;
      if (f.e_mag != 0.0) {
        out.valid = false;
        out.warning = "magnetic expansion with E != 0";
      } else if (wr < d.omega_l / kValidityRatio) {
        out.valid = false;
        out.warning = "omega_r not >> omega_L";
      }
      return out;
    }
    case Regime::electric_weak: {
      const double s2 = std::sin(f.theta_e) * std::sin(f.theta_e);
      out.berry = kTwoPi * 1.5 * std::cos(f.theta_e);
      const double we = d.omega_e;
      const double dl = p.delta;
      out.slope = we > 0.0
                      ? kTwoPi * s2 *
                            (75.0 * dl / (32.0 * we * we) + 9.0 / (16.0 * dl) +
                             81.0 * we * we / (400.0 * dl * dl * dl))
                      : 0.0;
      std::string why;
      if (f.b_mag != 0.0) why = "electric expansion with B != 0";
      else if (we > dl) why = "not a weak field (mu_e E > hbar Delta)";
      else if (we > 0.0 && (wr > kValidityRatio * we * we / dl ||
                            wr > kValidityRatio * dl ||
                            wr > kValidityRatio * dl * dl * dl / (we * we)))
        why = "omega_r outside the weak-field validity window";
      if (!why.empty()) {
        out.valid = false;
        out.warning = why;
      }
      return out;
    }
    case Regime::electric_strong: {
      const double s2 = std::sin(f.theta_e) * std::sin(f.theta_e);
      out.berry = kTwoPi * 1.5 * std::cos(f.theta_e);
      const double we = d.omega_e;
      const double dl = p.delta;
      out.slope = we > 0.0
                      ? kTwoPi * s2 *
                            (15.0 / (8.0 * we) +
                             125.0 * dl * dl / (96.0 * we * we * we))
                      : 0.0;
      std::string why;
      if (f.b_mag != 0.0) why = "electric expansion with B != 0";
      else if (we < dl) why = "not a strong field (mu_e E < hbar Delta)";
      else if (we > 0.0 && (wr > kValidityRatio * we ||
                            wr > kValidityRatio * we * we * we / (dl * dl)))
        why = "omega_r outside the strong-field validity window";
      if (!why.empty()) {
        out.valid = false;
        out.warning = why;
      }
      return out;
    }
  }
  throw RegimeUndefined("unknown expansion regime");
}

namespace {

// Delta_gamma per slot at an off-grid omega, anchored to a grid point.
std::array<double, kDim> dgamma_at(const TrackedSweep& sweep, double omega,
                                   int anchor) {
  const std::array<double, kDim> e = energies_matched(sweep, omega, anchor);
  std::array<double, kDim> out{};
  for (int s = 0; s < kDim; ++s) {
    const double e0 = sweep.zero_energy(label_from_slot(s));
    out[static_cast<size_t>(s)] =
        kTwoPi * (e[static_cast<size_t>(s)] - e0) / (omega * sweep.params.hbar);
  }
  return out;
}

double bisect_zero(const TrackedSweep& sweep, int anchor, double lo, double hi,
                   double glo, int si, int sj) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((hi - lo) <= 1.0e-12 * mid) return mid;
    const std::array<double, kDim> g = dgamma_at(sweep, mid, anchor);
    double val = g[static_cast<size_t>(si)];
    if (sj >= 0) val -= g[static_cast<size_t>(sj)];
    if ((val < 0.0) == (glo < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<ZeroCrossing> find_zero_phase(const TrackedSweep& sweep,
                                          ZeroMode mode) {
  const std::vector<PhaseRecord> phases = phases_on_sweep(sweep);
  const int n = static_cast<int>(sweep.grid.size());
  std::vector<ZeroCrossing> zeros;

  auto scan = [&](int si, int sj) {
    for (int k = 0; k + 1 < n; ++k) {
      if (sweep.grid[static_cast<size_t>(k)] <= 0.0) continue;
      double a = phases[static_cast<size_t>(k)].states[static_cast<size_t>(si)].geometric;
      double b = phases[static_cast<size_t>(k + 1)].states[static_cast<size_t>(si)].geometric;
      if (sj >= 0) {
        a -= phases[static_cast<size_t>(k)].states[static_cast<size_t>(sj)].geometric;
        b -= phases[static_cast<size_t>(k + 1)].states[static_cast<size_t>(sj)].geometric;
      }
      if (a == 0.0) {
        zeros.push_back({sj >= 0, si, sj, sweep.grid[static_cast<size_t>(k)]});
        continue;
      }
      if ((a < 0.0) != (b < 0.0)) {
        const double w = bisect_zero(sweep, k, sweep.grid[static_cast<size_t>(k)],
                                     sweep.grid[static_cast<size_t>(k + 1)], a, si, sj);
        zeros.push_back({sj >= 0, si, sj, w});
      }
    }
  };

  if (mode == ZeroMode::single_state) {
    for (int s = 0; s < kDim; ++s) scan(s, -1);
  } else {
    for (int si = 0; si < kDim; ++si)
      for (int sj = si + 1; sj < kDim; ++sj) scan(si, sj);
  }
  std::stable_sort(zeros.begin(), zeros.end(),
                   [](const ZeroCrossing& a, const ZeroCrossing& b) {
                     return a.omega_r < b.omega_r;
                   });
  return zeros;
}

}  // namespace ohphase
