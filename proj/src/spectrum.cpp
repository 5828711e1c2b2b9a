#include "ohphase/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ohphase {

namespace {

constexpr double kWeightMargin = 1.0e-6;    // parity-weight ambiguity bound
constexpr double kDegenerateRel = 1.0e-9;   // relative energy gap = exact degeneracy
constexpr double kLiftedRel = 1.0e-8;       // gap needed to seed labels
constexpr double kSpectrumResidualTol = 1.0e-12;

double parity_weight_e(const Vec8& v) {
  double w = 0.0;
  for (int i = 0; i < 4; ++i) w += std::norm(v[i]);
  return w;
}

double spectrum_scale(const DressedSpectrum& s) {
  double m = 0.0;
  for (double e : s.energy) m = std::max(m, std::abs(e));
  return m;
}

struct ParityClasses {
  std::array<int, 4> e_states{}, f_states{};  // ascending energy within class
  bool clean = false;                          // 4/4 split with weight margins
};

ParityClasses split_parity(const DressedSpectrum& s) {
  ParityClasses out;
  int ne = 0, nf = 0;
  for (int i = 0; i < kDim; ++i) {
    const double we = parity_weight_e(s.vec[static_cast<size_t>(i)]);
    if (std::abs(2.0 * we - 1.0) < kWeightMargin) return out;  // not clean
    if (we > 0.5) {
      if (ne == 4) return out;
      out.e_states[static_cast<size_t>(ne++)] = i;
    } else {
      if (nf == 4) return out;
      out.f_states[static_cast<size_t>(nf++)] = i;
    }
  }
  out.clean = (ne == 4 && nf == 4);
  return out;
}

bool class_lifted(const DressedSpectrum& s, const std::array<int, 4>& cls,
                  double rel) {
  const double scale = std::max(spectrum_scale(s), 1.0e-300);
  for (int k = 0; k + 1 < 4; ++k) {
    const double gap = s.energy[static_cast<size_t>(cls[static_cast<size_t>(k + 1)])] -
                       s.energy[static_cast<size_t>(cls[static_cast<size_t>(k)])];
    if (gap < rel * scale) return false;
  }
  return true;
}

constexpr int kM2Values[4] = {-3, -1, 1, 3};

}  // namespace

std::string StateLabel::str() const {
  std::string s = (m2 < 0 ? "-" : "+");
  s += std::to_string(std::abs(m2));
  s += "/2,";
  s += (parity == Parity::e ? 'e' : 'f');
  return s;
}

StateLabel label_from_slot(int slot) {
  StateLabel l;
  l.parity = slot >= 4 ? Parity::f : Parity::e;
  l.m2 = kM2Values[slot % 4];
  return l;
}

DressedSpectrum eigh_spectrum(const Mat8& h) {
  const EighResult r = eigh8(h);
  DressedSpectrum s;
  s.energy = r.w;
  s.vec = r.v;

  // contract: eigenpair residual and orthonormality certificates
  double scale = 0.0;
  for (double w : r.w) scale = std::max(scale, std::abs(w));
  scale = std::max(scale, 1.0e-300);
  for (int k = 0; k < kDim; ++k) {
    const Vec8 hv = h * r.v[static_cast<size_t>(k)];
    Vec8 res;
    for (int i = 0; i < kDim; ++i)
      res[i] = hv[i] - r.w[static_cast<size_t>(k)] * r.v[static_cast<size_t>(k)][i];
    if (norm2(res) > kSpectrumResidualTol * scale)
      throw Error("eigh_spectrum: eigenpair residual above tolerance");
  }
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      const cplx g = dot(s.vec[static_cast<size_t>(i)], s.vec[static_cast<size_t>(j)]);
      const double dev = std::abs(g - (i == j ? cplx{1.0} : cplx{0.0}));
      if (dev > kSpectrumResidualTol)
        throw Error("eigh_spectrum: eigenvector set not unitary");
    }
  }
  return s;
}

DressedSpectrum label_states(const DressedSpectrum& at_zero,
                             const MoleculeParams& p, const FieldProtocol& f) {
  (void)p;
  (void)f;
  const ParityClasses cls = split_parity(at_zero);
  if (!cls.clean)
    throw AmbiguousLabel("parity-block weights do not split the states 4/4");
  if (!class_lifted(at_zero, cls.e_states, kDegenerateRel) ||
      !class_lifted(at_zero, cls.f_states, kDegenerateRel))
    throw AmbiguousLabel("static spectrum is degenerate within a parity class");

  DressedSpectrum out = at_zero;
  for (int k = 0; k < 4; ++k) {
    out.label[static_cast<size_t>(cls.e_states[static_cast<size_t>(k)])] =
        StateLabel{kM2Values[k], Parity::e};
    out.label[static_cast<size_t>(cls.f_states[static_cast<size_t>(k)])] =
        StateLabel{kM2Values[k], Parity::f};
  }
  out.labeled = true;
  return out;
}

std::array<int, kDim> overlap_assignment(const std::array<Vec8, kDim>& from,
                                         const std::array<Vec8, kDim>& to,
                                         double* min_amp) {
  double ov[kDim][kDim];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      ov[i][j] = std::norm(dot(from[static_cast<size_t>(i)], to[static_cast<size_t>(j)]));

  // exact max-sum assignment by subset DP over used "to" columns
  constexpr int kMasks = 1 << kDim;
  static thread_local std::vector<double> best(kMasks);
  static thread_local std::vector<signed char> pick(kMasks);
  std::fill(best.begin(), best.end(), -1.0);
  std::fill(pick.begin(), pick.end(), -1);
  best[0] = 0.0;
  for (int mask = 0; mask < kMasks - 1; ++mask) {
    if (best[static_cast<size_t>(mask)] < 0.0) continue;
    const int row = __builtin_popcount(static_cast<unsigned>(mask));
    for (int j = 0; j < kDim; ++j) {
      if (mask & (1 << j)) continue;
      const int nm = mask | (1 << j);
      const double cand = best[static_cast<size_t>(mask)] + ov[row][j];
      if (cand > best[static_cast<size_t>(nm)]) {
        best[static_cast<size_t>(nm)] = cand;
        pick[static_cast<size_t>(nm)] = static_cast<signed char>(j);
      }
    }
  }
  std::array<int, kDim> perm{};
  int mask = kMasks - 1;
  for (int row = kDim - 1; row >= 0; --row) {
    const int j = pick[static_cast<size_t>(mask)];
    perm[static_cast<size_t>(row)] = j;
    mask &= ~(1 << j);
  }
  if (min_amp) {
    double m = 1.0;
    for (int i = 0; i < kDim; ++i)
      m = std::min(m, std::sqrt(ov[i][perm[static_cast<size_t>(i)]]));
    *min_amp = m;
  }
  return perm;
}

std::vector<DressedSpectrum> eval_grid_serial(const DressedLinearParts& parts,
                                              const std::vector<double>& grid) {
  std::vector<DressedSpectrum> out(grid.size());
  for (size_t k = 0; k < grid.size(); ++k)
    out[k] = eigh_spectrum(dressed_matrix_at(parts, grid[k]));
  return out;
}

std::vector<DressedSpectrum> eval_grid_parallel(const DressedLinearParts& parts,
                                                const std::vector<double>& grid,
                                                int threads) {
  std::vector<DressedSpectrum> out(grid.size());
  const int n = static_cast<int>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (int k = 0; k < n; ++k)
    out[static_cast<size_t>(k)] =
        eigh_spectrum(dressed_matrix_at(parts, grid[static_cast<size_t>(k)]));
  return out;
}

namespace {

// Recursive overlap link with interval bisection; the spectrum at midpoints is
// evaluated on demand. Throws TrackingBreakdown when the floor is reached.
std::array<int, kDim> link_refined(const DressedLinearParts& parts,
                                   const DressedSpectrum& a, double wa,
                                   const DressedSpectrum& b, double wb,
                                   double floor_step, double* worst_amp) {
  double amp = 0.0;
  const std::array<int, kDim> perm = overlap_assignment(a.vec, b.vec, &amp);
  if (amp > kLinkOverlapThreshold) {
    if (worst_amp) *worst_amp = std::min(*worst_amp, amp);
    return perm;
  }
  if (wb - wa <= floor_step) throw TrackingBreakdown(wa, wb);
  const double wm = 0.5 * (wa + wb);
  const DressedSpectrum mid = eigh_spectrum(dressed_matrix_at(parts, wm));
  const std::array<int, kDim> p1 =
      link_refined(parts, a, wa, mid, wm, floor_step, worst_amp);
  const std::array<int, kDim> p2 =
      link_refined(parts, mid, wm, b, wb, floor_step, worst_amp);
  std::array<int, kDim> comp{};
  for (int i = 0; i < kDim; ++i)
    comp[static_cast<size_t>(i)] =
        p2[static_cast<size_t>(p1[static_cast<size_t>(i)])];
  return comp;
}

// Zero-reference degeneracy clusters within one parity class, by energy.
std::vector<std::vector<int>> zero_clusters(const DressedSpectrum& at_zero,
                                            const std::array<int, 4>& cls) {
  const double scale = std::max(spectrum_scale(at_zero), 1.0e-300);
  std::vector<std::vector<int>> clusters;
  for (int k = 0; k < 4; ++k) {
    const int st = cls[static_cast<size_t>(k)];
    if (!clusters.empty()) {
      const int prev = clusters.back().back();
      if (at_zero.energy[static_cast<size_t>(st)] -
              at_zero.energy[static_cast<size_t>(prev)] <
          kDegenerateRel * scale) {
        clusters.back().push_back(st);
        continue;
      }
    }
    clusters.push_back({st});
  }
  return clusters;
}

// Label a lifted spectrum against a degenerate static reference. States are
// grouped by the zero-cluster their eigenvector links back to; |M| follows the
// static hierarchy (larger |E(0)| = larger |M|), the sign of M follows the
// sign of the omega_r-linear splitting times sign_conv (= sign cos(theta)).
bool seed_labels(const DressedSpectrum& seed, const DressedSpectrum& at_zero,
                 double sign_conv, bool resolve_arbitrary,
                 DressedSpectrum* out) {
  const ParityClasses seed_cls = split_parity(seed);
  if (!seed_cls.clean) return false;
  const ParityClasses zero_cls = split_parity(at_zero);
  if (!zero_cls.clean) return false;

  const std::array<int, kDim> to_zero = overlap_assignment(seed.vec, at_zero.vec);

  DressedSpectrum labeled = seed;
  for (int pc = 0; pc < 2; ++pc) {
    const std::array<int, 4>& scls = pc == 0 ? seed_cls.e_states : seed_cls.f_states;
    const std::array<int, 4>& zcls = pc == 0 ? zero_cls.e_states : zero_cls.f_states;
    const Parity par = pc == 0 ? Parity::e : Parity::f;

    if (!resolve_arbitrary && !class_lifted(seed, scls, kLiftedRel)) return false;

    std::vector<std::vector<int>> clusters = zero_clusters(at_zero, zcls);
    // seed states per zero cluster, ascending seed energy
    std::vector<std::vector<int>> members(clusters.size());
    for (int k = 0; k < 4; ++k) {
      const int st = scls[static_cast<size_t>(k)];
      const int zst = to_zero[static_cast<size_t>(st)];
      bool placed = false;
      for (size_t c = 0; c < clusters.size(); ++c) {
        if (std::find(clusters[c].begin(), clusters[c].end(), zst) !=
            clusters[c].end()) {
          members[c].push_back(st);
          placed = true;
          break;
        }
      }
      if (!placed) return false;  // linked across parity classes: not seedable
    }
    // clusters ascending |static energy|; allocate M sets inside-out
    std::vector<size_t> order(clusters.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return std::abs(at_zero.energy[static_cast<size_t>(clusters[x][0])]) <
             std::abs(at_zero.energy[static_cast<size_t>(clusters[y][0])]);
    });
    int next_abs_m2 = 1;  // 1 then 3
    for (size_t oc : order) {
      std::vector<int>& mem = members[oc];
      if (mem.size() != clusters[oc].size()) return false;
      std::sort(mem.begin(), mem.end());  // ascending energy (states sorted)
      if (mem.size() == 2) {
        const int lo = mem[0], hi = mem[1];
        const int abs_m2 = next_abs_m2;
        next_abs_m2 += 2;
        const bool hi_positive = sign_conv >= 0.0;
        labeled.label[static_cast<size_t>(hi)] =
            StateLabel{hi_positive ? abs_m2 : -abs_m2, par};
        labeled.label[static_cast<size_t>(lo)] =
            StateLabel{hi_positive ? -abs_m2 : abs_m2, par};
      } else if (mem.size() == 4) {
        for (int k = 0; k < 4; ++k)
          labeled.label[static_cast<size_t>(mem[static_cast<size_t>(k)])] =
              StateLabel{kM2Values[sign_conv >= 0.0 ? k : 3 - k], par};
        next_abs_m2 = 5;
      } else if (mem.size() == 1) {
        // non-degenerate cluster inside an otherwise degenerate class
        return false;
      } else {
        return false;
      }
    }
    if (next_abs_m2 != 5) return false;
  }
  labeled.labeled = true;
  *out = labeled;
  return true;
}

std::array<StateLabel, kDim> apply_perm(const std::array<StateLabel, kDim>& src,
                                        const std::array<int, kDim>& perm) {
  std::array<StateLabel, kDim> out{};
  for (int i = 0; i < kDim; ++i)
    out[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
        src[static_cast<size_t>(i)];
  return out;
}

}  // namespace

std::array<int, kDim> TrackedSweep::slot_state(int point) const {
  const DressedSpectrum& s = spectra[static_cast<size_t>(point)];
  std::array<int, kDim> map{};
  for (int i = 0; i < kDim; ++i)
    map[static_cast<size_t>(s.label[static_cast<size_t>(i)].slot())] = i;
  return map;
}

double TrackedSweep::energy_at(int point, const StateLabel& l) const {
  const DressedSpectrum& s = spectra[static_cast<size_t>(point)];
  for (int i = 0; i < kDim; ++i)
    if (s.label[static_cast<size_t>(i)] == l)
      return s.energy[static_cast<size_t>(i)];
  throw LabelMismatch("state " + l.str() + " not present at sweep point");
}

double TrackedSweep::zero_energy(const StateLabel& l) const {
  for (int i = 0; i < kDim; ++i)
    if (at_zero.label[static_cast<size_t>(i)] == l)
      return at_zero.energy[static_cast<size_t>(i)];
  throw LabelMismatch("state " + l.str() + " not present at omega_r = 0");
}

TrackedSweep track_sweep(const MoleculeParams& p, const FieldProtocol& f,
                         const std::vector<double>& grid, int threads) {
  if (grid.empty()) throw Error("track_sweep: empty grid");
  for (size_t k = 0; k + 1 < grid.size(); ++k)
    if (!(grid[k] < grid[k + 1]))
      throw Error("track_sweep: grid must be strictly ascending");
  if (grid.front() < 0.0) throw Error("track_sweep: omega_r must be >= 0");

  const DressedLinearParts parts = dressed_linear_parts(p, f);

  TrackedSweep sweep;
  sweep.params = p;
  sweep.fields = f;
  sweep.grid = grid;
  sweep.at_zero = eigh_spectrum(parts.static_part);
  sweep.spectra = threads == 1 ? eval_grid_serial(parts, grid)
                               : eval_grid_parallel(parts, grid, threads);

  const double span = std::max(grid.back() - grid.front(), grid.back());
  const double floor_step = 1.0e-9 * std::max(span, 1.0e-300);
  const int n = static_cast<int>(grid.size());

  int seed_idx = -1;  // grid index whose labels are authoritative
  bool zero_labeled = false;
  try {
    sweep.at_zero = label_states(sweep.at_zero, p, f);
    zero_labeled = true;
  } catch (const AmbiguousLabel&) {
    // degenerate static limit: seed at the first lifted grid point
    const double sign_conv =
        f.e_mag > 0.0 ? std::cos(f.theta_e) : std::cos(f.theta_m);
    for (int k = 0; k < n && seed_idx < 0; ++k) {
      DressedSpectrum labeled;
      if (grid[static_cast<size_t>(k)] > 0.0 &&
          seed_labels(sweep.spectra[static_cast<size_t>(k)], sweep.at_zero,
                      sign_conv, false, &labeled)) {
        sweep.spectra[static_cast<size_t>(k)] = labeled;
        seed_idx = k;
      }
    }
    if (seed_idx < 0) {
      // never lifted on this grid: keep clusters, resolve signs arbitrarily
      for (int k = n - 1; k >= 0 && seed_idx < 0; --k) {
        DressedSpectrum labeled;
        if (grid[static_cast<size_t>(k)] > 0.0 &&
            seed_labels(sweep.spectra[static_cast<size_t>(k)], sweep.at_zero,
                        sign_conv, true, &labeled)) {
          sweep.spectra[static_cast<size_t>(k)] = labeled;
          seed_idx = k;
        }
      }
    }
    if (seed_idx < 0)
      throw AmbiguousLabel(
          "no grid point lifts the static degeneracy enough to seed labels");
    // propagate to the zero reference (plain assignment: the degenerate
    // subspace carries no energy information, any in-cluster pairing works)
    const std::array<int, kDim> to_zero = overlap_assignment(
        sweep.spectra[static_cast<size_t>(seed_idx)].vec, sweep.at_zero.vec);
    sweep.at_zero.label =
        apply_perm(sweep.spectra[static_cast<size_t>(seed_idx)].label, to_zero);
    sweep.at_zero.labeled = true;
    // backward through grid points below the seed
    for (int k = seed_idx - 1; k >= 0; --k) {
      const std::array<int, kDim> perm =
          overlap_assignment(sweep.spectra[static_cast<size_t>(k + 1)].vec,
                             sweep.spectra[static_cast<size_t>(k)].vec);
      sweep.spectra[static_cast<size_t>(k)].label =
          apply_perm(sweep.spectra[static_cast<size_t>(k + 1)].label, perm);
      sweep.spectra[static_cast<size_t>(k)].labeled = true;
    }
  }

  if (zero_labeled) {
    // link the static reference into the first grid point
    if (grid.front() == 0.0) {
      sweep.spectra.front().label = sweep.at_zero.label;
      sweep.spectra.front().labeled = true;
    } else {
      const std::array<int, kDim> perm = link_refined(
          parts, sweep.at_zero, 0.0, sweep.spectra.front(), grid.front(),
          floor_step, &sweep.min_link_overlap);
      sweep.spectra.front().label = apply_perm(sweep.at_zero.label, perm);
      sweep.spectra.front().labeled = true;
    }
    seed_idx = 0;
  }

  for (int k = seed_idx; k + 1 < n; ++k) {
    const std::array<int, kDim> perm = link_refined(
        parts, sweep.spectra[static_cast<size_t>(k)], grid[static_cast<size_t>(k)],
        sweep.spectra[static_cast<size_t>(k + 1)], grid[static_cast<size_t>(k + 1)],
        floor_step, &sweep.min_link_overlap);
    sweep.spectra[static_cast<size_t>(k + 1)].label =
        apply_perm(sweep.spectra[static_cast<size_t>(k)].label, perm);
    sweep.spectra[static_cast<size_t>(k + 1)].labeled = true;
  }
  return sweep;
}

std::array<double, kDim> energies_matched(const TrackedSweep& sweep,
                                          double omega_r, int anchor_point) {
  const DressedLinearParts parts =
      dressed_linear_parts(sweep.params, sweep.fields);
  const DressedSpectrum s = eigh_spectrum(dressed_matrix_at(parts, omega_r));
  const DressedSpectrum& anchor =
      sweep.spectra[static_cast<size_t>(anchor_point)];
  const std::array<int, kDim> perm = overlap_assignment(anchor.vec, s.vec);
  std::array<double, kDim> out{};
  for (int i = 0; i < kDim; ++i) {
    const int slot = anchor.label[static_cast<size_t>(i)].slot();
    out[static_cast<size_t>(slot)] =
        s.energy[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  }
  return out;
}

std::vector<GapEvent> find_spectrum_gaps(const TrackedSweep& sweep,
                                         double gap_tol) {
  const int n = static_cast<int>(sweep.grid.size());
  if (n < 3) return {};

  double scale = 0.0;
  for (const DressedSpectrum& s : sweep.spectra)
    scale = std::max(scale, spectrum_scale(s));
  if (gap_tol < 0.0) gap_tol = 1.0e-6 * scale;

  // slot-ordered energies per point
  std::vector<std::array<double, kDim>> e(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::array<int, kDim> map = sweep.slot_state(k);
    for (int s = 0; s < kDim; ++s)
      e[static_cast<size_t>(k)][static_cast<size_t>(s)] =
          sweep.spectra[static_cast<size_t>(k)]
              .energy[static_cast<size_t>(map[static_cast<size_t>(s)])];
  }

  std::vector<GapEvent> events;
  for (int si = 0; si < kDim; ++si) {
    for (int sj = si + 1; sj < kDim; ++sj) {
      auto diff = [&](int k) {
        return e[static_cast<size_t>(k)][static_cast<size_t>(si)] -
               e[static_cast<size_t>(k)][static_cast<size_t>(sj)];
      };
      auto diff_at = [&](double w, int anchor) {
        const std::array<double, kDim> er = energies_matched(sweep, w, anchor);
        return er[static_cast<size_t>(si)] - er[static_cast<size_t>(sj)];
      };
      for (int k = 0; k + 1 < n; ++k) {
        const double d0 = diff(k);
        const double d1 = diff(k + 1);
        GapEvent ev;
        ev.a = label_from_slot(si);
        ev.b = label_from_slot(sj);
        if ((d0 < 0.0) != (d1 < 0.0)) {
          // sign change: the tracked levels cross; bisect the zero
          double lo = sweep.grid[static_cast<size_t>(k)];
          double hi = sweep.grid[static_cast<size_t>(k + 1)];
          double dlo = d0;
          for (int it = 0; it < 100 && (hi - lo) > 1.0e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double dm = diff_at(mid, k);
            if ((dm < 0.0) == (dlo < 0.0)) {
              lo = mid;
              dlo = dm;
            } else {
              hi = mid;
            }
          }
          ev.omega_r = 0.5 * (lo + hi);
          ev.gap = std::abs(diff_at(ev.omega_r, k));
          ev.crossing = ev.gap < gap_tol;
          events.push_back(ev);
          continue;
        }
        if (k == 0 || k + 2 >= n) continue;
        const double gm = std::abs(diff(k - 1));
        const double g0 = std::abs(d0);
        const double gp = std::abs(d1);
        if (!(g0 < gm && g0 <= gp)) continue;
        // ignore float-level ripples on near-constant gap curves
        if (gm - g0 < 1.0e-12 * scale && gp - g0 < 1.0e-12 * scale) continue;
        // same-sign dip: avoided crossing; parabolic vertex on |diff|
        const double x0 = sweep.grid[static_cast<size_t>(k - 1)];
        const double x1 = sweep.grid[static_cast<size_t>(k)];
        const double x2 = sweep.grid[static_cast<size_t>(k + 1)];
        const double d21 = (gp - g0) / (x2 - x1);
        const double d10 = (g0 - gm) / (x1 - x0);
        const double curv = (d21 - d10) / (x2 - x0);
        double xs = x1;
        if (curv > 0.0)
          xs = std::clamp(0.5 * (x0 + x1) - d10 / (2.0 * curv), x0, x2);
        const double gr = std::abs(diff_at(xs, k));
        if (gr <= g0) {
          ev.omega_r = xs;
          ev.gap = gr;
        } else {
          ev.omega_r = x1;
          ev.gap = g0;
        }
        ev.crossing = ev.gap < gap_tol;
        events.push_back(ev);
      }
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const GapEvent& a, const GapEvent& b) {
                     return a.omega_r < b.omega_r;
                   });
  return events;
}

}  // namespace ohphase
