#include "ohphase/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ohphase/constants.hpp"

namespace ohphase {

namespace {

using constants::kTwoPi;

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct KvStore {
  // (section, key) -> value
  std::map<std::pair<std::string, std::string>, std::string> kv;

  bool has(const std::string& sec, const std::string& key) const {
    return kv.count({sec, key}) > 0;
  }
  std::string take(const std::string& sec, const std::string& key) {
    auto it = kv.find({sec, key});
    std::string v = it->second;
    kv.erase(it);
    return v;
  }
};

double parse_double(const std::string& sec, const std::string& key,
                    const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError("[" + sec + "] " + key + ": not a number: '" + v + "'");
}

int parse_int(const std::string& sec, const std::string& key,
              const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (trim(v.substr(pos)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError("[" + sec + "] " + key + ": not an integer: '" + v + "'");
}

bool parse_bool(const std::string& sec, const std::string& key,
                const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("[" + sec + "] " + key + ": not a boolean: '" + v + "'");
}

const std::set<std::string> kSections = {"molecule", "fields", "sweep",
                                         "output", "toggles"};
const std::map<std::string, std::set<std::string>> kKeys = {
    {"molecule",
     {"delta_ghz", "delta_hz", "delta_rad_s", "delta_is_angular", "mu_e_debye",
      "mu_b_j_per_t", "hbar_j_s", "debye_c_m"}},
    {"fields", {"b_tesla", "theta_m", "e_kv_per_cm", "theta_e", "omega_r_e_scale"}},
    {"sweep",
     {"omega_r_min_rad_s", "omega_r_min_hz", "omega_r_max_rad_s",
      "omega_r_max_hz", "points", "scale"}},
    {"output", {"prefix", "format", "gnuplot"}},
    {"toggles", {"oracle_check", "pt_compare", "pt3_omega_l_squared"}},
};

}  // namespace

std::vector<double> RunConfig::make_grid() const {
  std::vector<double> grid(static_cast<size_t>(points));
  if (log_scale) {
    const double la = std::log(omega_r_min);
    const double lb = std::log(omega_r_max);
    for (int k = 0; k < points; ++k)
      grid[static_cast<size_t>(k)] =
          std::exp(la + (lb - la) * k / (points - 1));
    grid.front() = omega_r_min;
    grid.back() = omega_r_max;
  } else {
    for (int k = 0; k < points; ++k)
      grid[static_cast<size_t>(k)] =
          omega_r_min + (omega_r_max - omega_r_min) * k / (points - 1);
    grid.back() = omega_r_max;
  }
  return grid;
}

RunConfig parse_config_text(const std::string& text) {
  KvStore store;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section))
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!kKeys.at(section).count(key))
      throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
    if (store.has(section, key))
      throw ConfigError("duplicate key '" + key + "' in section [" + section + "]");
    store.kv[{section, key}] = val;
  }

  RunConfig cfg;

  // molecule
  {
    int delta_keys = 0;
    double delta = cfg.molecule.delta;
    if (store.has("molecule", "delta_is_angular"))
      cfg.delta_is_angular = parse_bool("molecule", "delta_is_angular",
                                        store.take("molecule", "delta_is_angular"));
    if (store.has("molecule", "delta_ghz")) {
      const double g = parse_double("molecule", "delta_ghz",
                                    store.take("molecule", "delta_ghz"));
      delta = cfg.delta_is_angular ? g * 1.0e9 : kTwoPi * g * 1.0e9;
      ++delta_keys;
    }
    if (store.has("molecule", "delta_hz")) {
      delta = kTwoPi * parse_double("molecule", "delta_hz",
                                    store.take("molecule", "delta_hz"));
      ++delta_keys;
    }
    if (store.has("molecule", "delta_rad_s")) {
      delta = parse_double("molecule", "delta_rad_s",
                           store.take("molecule", "delta_rad_s"));
      ++delta_keys;
    }
    if (delta_keys > 1)
      throw ConfigError("give at most one of delta_ghz / delta_hz / delta_rad_s");
    cfg.molecule.delta = delta;

    double debye = constants::kDebye;
    if (store.has("molecule", "debye_c_m"))
      debye = parse_double("molecule", "debye_c_m", store.take("molecule", "debye_c_m"));
    if (store.has("molecule", "mu_e_debye"))
      cfg.molecule.mu_e = debye * parse_double("molecule", "mu_e_debye",
                                               store.take("molecule", "mu_e_debye"));
    else
      cfg.molecule.mu_e = debye * constants::kMuEDefaultDebye;
    if (store.has("molecule", "mu_b_j_per_t"))
      cfg.molecule.mu_b = parse_double("molecule", "mu_b_j_per_t",
                                       store.take("molecule", "mu_b_j_per_t"));
    if (store.has("molecule", "hbar_j_s"))
      cfg.molecule.hbar =
          parse_double("molecule", "hbar_j_s", store.take("molecule", "hbar_j_s"));
    cfg.molecule.validate();
  }

  // fields
  {
    if (store.has("fields", "b_tesla"))
      cfg.fields.b_mag = parse_double("fields", "b_tesla", store.take("fields", "b_tesla"));
    if (store.has("fields", "theta_m"))
      cfg.fields.theta_m = parse_double("fields", "theta_m", store.take("fields", "theta_m"));
    if (store.has("fields", "e_kv_per_cm"))
      cfg.fields.e_mag =
          1.0e5 * parse_double("fields", "e_kv_per_cm", store.take("fields", "e_kv_per_cm"));
    if (store.has("fields", "theta_e"))
      cfg.fields.theta_e = parse_double("fields", "theta_e", store.take("fields", "theta_e"));
    if (store.has("fields", "omega_r_e_scale"))
      cfg.e_rate_scale = parse_double("fields", "omega_r_e_scale",
                                      store.take("fields", "omega_r_e_scale"));
    try {
      cfg.fields.validate();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }

  // sweep
  {
    bool have_min = false, have_max = false;
    if (store.has("sweep", "omega_r_min_rad_s")) {
      cfg.omega_r_min = parse_double("sweep", "omega_r_min_rad_s",
                                     store.take("sweep", "omega_r_min_rad_s"));
      have_min = true;
    }
    if (store.has("sweep", "omega_r_min_hz")) {
      if (have_min) throw ConfigError("omega_r_min given twice");
      cfg.omega_r_min = kTwoPi * parse_double("sweep", "omega_r_min_hz",
                                              store.take("sweep", "omega_r_min_hz"));
      have_min = true;
    }
    if (store.has("sweep", "omega_r_max_rad_s")) {
      cfg.omega_r_max = parse_double("sweep", "omega_r_max_rad_s",
                                     store.take("sweep", "omega_r_max_rad_s"));
      have_max = true;
    }
    if (store.has("sweep", "omega_r_max_hz")) {
      if (have_max) throw ConfigError("omega_r_max given twice");
      cfg.omega_r_max = kTwoPi * parse_double("sweep", "omega_r_max_hz",
                                              store.take("sweep", "omega_r_max_hz"));
      have_max = true;
    }
    if (!have_min || !have_max)
      throw ConfigError("sweep needs omega_r_min_* and omega_r_max_* keys");
    if (store.has("sweep", "points"))
      cfg.points = parse_int("sweep", "points", store.take("sweep", "points"));
    if (store.has("sweep", "scale")) {
      const std::string s = store.take("sweep", "scale");
      if (s == "linear")
        cfg.log_scale = false;
      else if (s == "log")
        cfg.log_scale = true;
      else
        throw ConfigError("sweep scale must be linear or log");
    }
    if (!(cfg.omega_r_min < cfg.omega_r_max))
      throw ConfigError("omega_r_min must be < omega_r_max");
    if (cfg.points < 2) throw ConfigError("sweep needs points >= 2");
    if (cfg.log_scale && cfg.omega_r_min <= 0.0)
      throw ConfigError("log scale needs omega_r_min > 0");
    if (cfg.omega_r_min < 0.0) throw ConfigError("omega_r_min must be >= 0");
  }

  // output
  {
    if (store.has("output", "prefix")) cfg.prefix = store.take("output", "prefix");
    if (store.has("output", "format")) {
      const std::string s = store.take("output", "format");
      if (s == "csv")
        cfg.format = OutputFormat::csv;
      else if (s == "json")
        cfg.format = OutputFormat::json;
      else
        throw ConfigError("output format must be csv or json");
    }
    if (store.has("output", "gnuplot"))
      cfg.gnuplot = parse_bool("output", "gnuplot", store.take("output", "gnuplot"));
  }

  // toggles
  {
    if (store.has("toggles", "oracle_check"))
      cfg.oracle_check =
          parse_bool("toggles", "oracle_check", store.take("toggles", "oracle_check"));
    if (store.has("toggles", "pt_compare"))
      cfg.pt_compare =
          parse_bool("toggles", "pt_compare", store.take("toggles", "pt_compare"));
    if (store.has("toggles", "pt3_omega_l_squared"))
      cfg.pt3_omega_l_squared = parse_bool("toggles", "pt3_omega_l_squared",
                                           store.take("toggles", "pt3_omega_l_squared"));
  }

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace ohphase
