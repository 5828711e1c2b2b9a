#pragma once

// Cyclic Jacobi eigensolver for 8x8 complex Hermitian matrices.
// Unitary 2x2 rotations annihilate off-diagonal pairs; convergence when the
// off-diagonal Frobenius norm drops below 1e-15 * ||H||_F, capped at 100
// sweeps. Grossly non-Hermitian input never converges and is reported via
// ConvergenceFailure.

#include <array>

#include "ohphase/errors.hpp"
#include "ohphase/matrix8.hpp"

namespace ohphase {

struct EighResult {
  std::array<double, kDim> w;   // ascending eigenvalues
  std::array<Vec8, kDim> v;     // orthonormal eigenvectors, v[k] for w[k]
  int sweeps = 0;
};

EighResult eigh8(const Mat8& h);

}  // namespace ohphase
