#pragma once

#include <stdexcept>
#include <string>

namespace ohphase {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// dressing: field protocol is not in the co-rotating monochromatic family
struct NonCancellation : Error {
  double residual;
  explicit NonCancellation(double r)
      : Error("dressed matrix retains time dependence, residual = " +
              std::to_string(r)),
        residual(r) {}
};

// eigh8: iteration cap reached (non-Hermitian input slipped through)
struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

// label_states: exact degeneracy prevents a unique (M, parity) assignment
struct AmbiguousLabel : Error {
  explicit AmbiguousLabel(const std::string& msg) : Error(msg) {}
};

// track_sweep: refinement floored out with overlap still below threshold
struct TrackingBreakdown : Error {
  double omega_lo, omega_hi;
  TrackingBreakdown(double lo, double hi)
      : Error("state tracking broke down in [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "] rad/s"),
        omega_lo(lo),
        omega_hi(hi) {}
};

struct LabelMismatch : Error {
  explicit LabelMismatch(const std::string& msg) : Error(msg) {}
};

struct NotPureMagnetic : Error {
  NotPureMagnetic() : Error("operation requires a pure magnetic protocol (E = 0)") {}
};

struct NoCriticalRate : Error {
  NoCriticalRate() : Error("no critical rotation rate: cos(theta_m) <= 0") {}
};

struct DegenerateBareSpectrum : Error {
  DegenerateBareSpectrum()
      : Error("perturbation theory undefined at B = 0 (degenerate bare spectrum)") {}
};

struct RegimeUndefined : Error {
  explicit RegimeUndefined(const std::string& msg) : Error(msg) {}
};

struct StepCountTooSmall : Error {
  explicit StepCountTooSmall(int steps)
      : Error("propagator needs >= 256 substeps, got " + std::to_string(steps)) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace ohphase
