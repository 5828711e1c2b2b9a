#pragma once

// Flat, sectioned key-value run configuration. Frequencies are accepted only
// with an explicit unit suffix (*_rad_s or *_hz, converted by 2 pi); the
// quoted lambda-doubling value can be read in either convention via
// delta_is_angular. Unknown sections or keys are rejected.

#include <string>

#include "ohphase/model.hpp"

namespace ohphase {

enum class OutputFormat { csv, json };

struct RunConfig {
  MoleculeParams molecule = MoleculeParams::oh_defaults();
  FieldProtocol fields;       // omega_r unused by sweeps (grid applies)
  double e_rate_scale = 1.0;  // != 1: bichromatic escape hatch

  double omega_r_min = 0.0;   // rad/s
  double omega_r_max = 0.0;   // rad/s
  int points = 0;
  bool log_scale = false;

  std::string prefix = "sweep";
  OutputFormat format = OutputFormat::csv;
  bool gnuplot = false;

  bool oracle_check = false;
  bool pt_compare = false;
  bool pt3_omega_l_squared = false;

  bool delta_is_angular = false;  // echo of the convention used

  std::vector<double> make_grid() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace ohphase
