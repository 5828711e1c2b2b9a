#pragma once

// Independent verification path: direct propagation of the time-dependent
// Schrodinger equation over one rotation period with the midpoint exponential
// rule (second-order accurate, exactly unitary per substep). The dressed
// construction is certified through U(T) = -exp(-i H_d T / hbar).

#include <array>
#include <vector>

#include "ohphase/matrix8.hpp"
#include "ohphase/model.hpp"

namespace ohphase {

struct PropagatorResult {
  Mat8 u;                        // one-period evolution operator
  int step_count = 0;            // substeps actually used
  double unitarity_defect = 0.0; // max |(U^H U - I)_ij|
};

// exp(i * c * H) for Hermitian H, via eigendecomposition.
Mat8 exp_i_hermitian(const Mat8& h, double c);

// Midpoint exponential product over one period T = 2 pi / omega_r.
// steps < 256 throws StepCountTooSmall; the count is raised automatically so
// that each substep rotates phases by less than 0.1 rad.
PropagatorResult propagate_period(const MoleculeParams& p,
                                  const FieldProtocol& f, int steps);

// Batch map over independent protocols: serial reference (threads == 1) or
// OpenMP (threads > 1); per-protocol results are bitwise identical.
std::vector<PropagatorResult> propagate_batch(
    const MoleculeParams& p, const std::vector<FieldProtocol>& protocols,
    int steps, int threads);

// Eigenvalues of a unitary matrix via a commuting Hermitian combination of
// (U + U^H)/2 and (U - U^H)/(2i).
std::array<cplx, kDim> unitary_eigenvalues(const Mat8& u);

// Quasi-energies from the propagator eigenphases, reduced to [0, hbar*w_r).
std::array<double, kDim> quasi_energies(const PropagatorResult& r,
                                        const MoleculeParams& p,
                                        double omega_r);

}  // namespace ohphase
