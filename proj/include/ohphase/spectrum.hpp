#pragma once

// Diagonalization of the dressed matrix plus continuous (M, parity) state
// identification along omega_r sweeps.
//
// Labels are seeded in the static limit: parity from the dominant parity-block
// weight of the eigenvector, M ascending with energy within each parity class.
// When the static spectrum is degenerate (pure electric field: +-M pairs),
// labels are seeded at the first grid point where the degeneracy is lifted and
// propagated backward; |M| then follows the static Stark hierarchy (larger
// |static energy| cluster = larger |M|) and the sign of M follows the sign of
// the linear-in-omega_r splitting relative to cos(theta).

#include <array>
#include <string>
#include <vector>

#include "ohphase/dressing.hpp"
#include "ohphase/eigh8.hpp"
#include "ohphase/model.hpp"

namespace ohphase {

enum class Parity : int { e = 0, f = 1 };

struct StateLabel {
  int m2 = 0;                 // 2*M, in {-3, -1, +1, +3}
  Parity parity = Parity::e;

  // canonical slot: e block first, M ascending
  int slot() const { return (parity == Parity::f ? 4 : 0) + (m2 + 3) / 2; }
  std::string str() const;
  bool operator==(const StateLabel&) const = default;
};

StateLabel label_from_slot(int slot);

struct DressedSpectrum {
  std::array<double, kDim> energy;       // ascending, joules
  std::array<Vec8, kDim> vec;            // orthonormal eigenvectors
  std::array<StateLabel, kDim> label;    // valid when labeled == true
  bool labeled = false;
};

// eigh8 plus the residual / unitarity certificates of the spectrum contract.
DressedSpectrum eigh_spectrum(const Mat8& h);

// Static-limit labeling; throws AmbiguousLabel on exact degeneracy or when a
// parity weight margin is below 1e-6.
DressedSpectrum label_states(const DressedSpectrum& at_zero,
                             const MoleculeParams& p, const FieldProtocol& f);

struct TrackedSweep {
  MoleculeParams params;
  FieldProtocol fields;
  std::vector<double> grid;                  // ascending omega_r, rad/s
  std::vector<DressedSpectrum> spectra;      // labeled, one per grid point
  DressedSpectrum at_zero;                   // labeled reference at omega_r = 0
  double min_link_overlap = 1.0;             // smallest accepted |<v|w>|
  std::array<int, kDim> slot_state(int point) const;  // label slot -> state idx

  double energy_at(int point, const StateLabel& l) const;
  double zero_energy(const StateLabel& l) const;
};

// Grid evaluation map: serial reference (threads == 1) or OpenMP (threads > 1).
// Per-point results are identical bit for bit between the two paths.
std::vector<DressedSpectrum> eval_grid_serial(const DressedLinearParts& parts,
                                              const std::vector<double>& grid);
std::vector<DressedSpectrum> eval_grid_parallel(const DressedLinearParts& parts,
                                                const std::vector<double>& grid,
                                                int threads);

TrackedSweep track_sweep(const MoleculeParams& p, const FieldProtocol& f,
                         const std::vector<double>& grid, int threads = 1);

struct GapEvent {
  StateLabel a, b;
  double omega_r;
  double gap;        // joules
  bool crossing;     // gap < gap_tol
};

// Local minima of |E_i - E_j| with parabolic refinement. gap_tol < 0 selects
// the default 1e-6 * max |eigenvalue| over the sweep.
std::vector<GapEvent> find_spectrum_gaps(const TrackedSweep& sweep,
                                         double gap_tol = -1.0);

// Energies at an off-grid omega, matched by eigenvector overlap against the
// anchor point's labeled states; returned in label-slot order.
std::array<double, kDim> energies_matched(const TrackedSweep& sweep,
                                          double omega_r, int anchor_point);

// Max-total-overlap assignment on |<from_i|to_j>|^2 (exact, bitmask DP).
// Returns perm with to-state perm[i] matched to from-state i; min_amp gets the
// smallest matched |<from_i|to_perm[i]>|.
std::array<int, kDim> overlap_assignment(const std::array<Vec8, kDim>& from,
                                         const std::array<Vec8, kDim>& to,
                                         double* min_amp = nullptr);

inline constexpr double kLinkOverlapThreshold = 0.70710678118654752440;  // 1/sqrt(2)

}  // namespace ohphase
