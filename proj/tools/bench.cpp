// Benchmark: serial reference vs OpenMP-parallel kernels.
//
// Two data-parallel maps are timed: the dressed-spectrum evaluation over an
// omega_r grid (the sweep hot loop) and one-period propagation over a batch of
// protocols (the oracle hot loop). Per-item arithmetic is identical in both
// paths, so results must agree bit for bit; the program asserts that.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "ohphase/constants.hpp"
#include "ohphase/dressing.hpp"
#include "ohphase/oracle.hpp"
#include "ohphase/spectrum.hpp"
#include "ohphase/threading.hpp"

using namespace ohphase;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int points = 20000;
  int batch = 24;
  int steps = 2048;
  int threads = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--points") && i + 1 < argc)
      points = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--batch") && i + 1 < argc)
      batch = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--steps") && i + 1 < argc)
      steps = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc)
      threads = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr,
                   "usage: %s [--points N] [--batch N] [--steps N] [--threads N]\n",
                   argv[0]);
      return 2;
    }
  }
  threads = resolve_threads(threads);

  const MoleculeParams p = MoleculeParams::oh_defaults();
  FieldProtocol f;
  f.b_mag = 0.1;
  f.theta_m = constants::kPi / 3.0;
  f.e_mag = 2.0e5;
  f.theta_e = constants::kPi / 8.0;

  std::printf("threads: %d\n\n", threads);

  {
    const DressedLinearParts parts = dressed_linear_parts(p, f);
    std::vector<double> grid(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k)
      grid[static_cast<size_t>(k)] = 1.0e8 + (1.0e11 - 1.0e8) * k / (points - 1);

    auto t0 = std::chrono::steady_clock::now();
    const std::vector<DressedSpectrum> serial = eval_grid_serial(parts, grid);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const std::vector<DressedSpectrum> parallel =
        eval_grid_parallel(parts, grid, threads);
    const double t_parallel = ms_since(t0);

    for (int k = 0; k < points; ++k)
      for (int s = 0; s < kDim; ++s)
        if (serial[static_cast<size_t>(k)].energy[static_cast<size_t>(s)] !=
            parallel[static_cast<size_t>(k)].energy[static_cast<size_t>(s)]) {
          std::fprintf(stderr, "MISMATCH at grid point %d\n", k);
          return 1;
        }

    std::printf("spectrum grid map, %d points\n", points);
    std::printf("  serial   %10.2f ms\n", t_serial);
    std::printf("  parallel %10.2f ms   speedup %.2fx   (bitwise identical)\n\n",
                t_parallel, t_serial / t_parallel);
  }

  {
    std::vector<FieldProtocol> protocols;
    for (int k = 0; k < batch; ++k) {
      FieldProtocol fk = f;
      fk.omega_r = 2.0e9 + 1.0e9 * k;
      protocols.push_back(fk);
    }

    auto t0 = std::chrono::steady_clock::now();
    const std::vector<PropagatorResult> serial =
        propagate_batch(p, protocols, steps, 1);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const std::vector<PropagatorResult> parallel =
        propagate_batch(p, protocols, steps, threads);
    const double t_parallel = ms_since(t0);

    for (int k = 0; k < batch; ++k)
      for (int i = 0; i < kDim * kDim; ++i)
        if (serial[static_cast<size_t>(k)].u.a[static_cast<size_t>(i)] !=
            parallel[static_cast<size_t>(k)].u.a[static_cast<size_t>(i)]) {
          std::fprintf(stderr, "MISMATCH in batch item %d\n", k);
          return 1;
        }

    std::printf("one-period propagation, %d protocols x %d steps\n", batch, steps);
    std::printf("  serial   %10.2f ms\n", t_serial);
    std::printf("  parallel %10.2f ms   speedup %.2fx   (bitwise identical)\n",
                t_parallel, t_serial / t_parallel);
  }
  return 0;
}
