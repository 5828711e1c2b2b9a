#pragma once

// Sweep report emission: deterministic CSV and a losslessly round-tripping
// JSON variant. Floats are printed with 17 significant digits in scientific
// notation so repeated runs are byte identical.

#include <iosfwd>
#include <string>
#include <vector>

#include "ohphase/phase.hpp"
#include "ohphase/spectrum.hpp"

namespace ohphase {

inline constexpr const char* kSweepSchema = "ohphase.sweep.v1";

struct SweepRow {
  double omega_r = 0.0;
  int state_index = 0;  // label slot
  int m_times_2 = 0;
  char parity = 'e';
  double energy_j = 0.0;
  double total = 0.0;
  double dynamical = 0.0;
  double geometric = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // sorted by (omega_r, state_index)
  std::vector<ZeroCrossing> zeros;
  std::vector<GapEvent> gaps;
  std::vector<std::string> warnings;
};

SweepReport make_report(const TrackedSweep& sweep,
                        const std::vector<PhaseRecord>& phases);

std::string format_g17(double x);

void write_csv(const SweepReport& report, std::ostream& out);
void write_json(const SweepReport& report, std::ostream& out);
SweepReport read_json(std::istream& in);

void write_gnuplot_stub(const std::string& data_file, std::ostream& out);

}  // namespace ohphase
