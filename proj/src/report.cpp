#include "ohphase/report.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace ohphase {

SweepReport make_report(const TrackedSweep& sweep,
                        const std::vector<PhaseRecord>& phases) {
  SweepReport rep;
  rep.rows.reserve(phases.size() * kDim);
  for (size_t k = 0; k < phases.size(); ++k) {
    for (int s = 0; s < kDim; ++s) {
      const StatePhase& sp = phases[k].states[static_cast<size_t>(s)];
      SweepRow row;
      row.omega_r = phases[k].omega_r;
      row.state_index = s;
      row.m_times_2 = sp.label.m2;
      row.parity = sp.label.parity == Parity::e ? 'e' : 'f';
      row.energy_j = sweep.energy_at(static_cast<int>(k), sp.label);
      row.total = sp.total;
      row.dynamical = sp.dynamical;
      row.geometric = sp.geometric;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_csv(const SweepReport& report, std::ostream& out) {
  out << "# schema: " << kSweepSchema << "\n";
  out << "omega_r_rad_s,state_index,M_times_2,parity,energy_joule,"
         "total_phase_rad,dynamical_phase_rad,geometric_phase_rad\n";
  for (const SweepRow& r : report.rows) {
    out << format_g17(r.omega_r) << ',' << r.state_index << ',' << r.m_times_2
        << ',' << r.parity << ',' << format_g17(r.energy_j) << ','
        << format_g17(r.total) << ',' << format_g17(r.dynamical) << ','
        << format_g17(r.geometric) << '\n';
  }
  for (const ZeroCrossing& z : report.zeros) {
    if (z.relative)
      out << "# zero_phase relative i=" << z.slot_i << " j=" << z.slot_j
          << " omega_r=" << format_g17(z.omega_r) << "\n";
    else
      out << "# zero_phase single state=" << z.slot_i
          << " omega_r=" << format_g17(z.omega_r) << "\n";
  }
  for (const GapEvent& g : report.gaps) {
    out << "# gap i=" << g.a.slot() << " j=" << g.b.slot()
        << " omega_r=" << format_g17(g.omega_r)
        << " gap_joule=" << format_g17(g.gap)
        << " kind=" << (g.crossing ? "crossing" : "avoided") << "\n";
  }
  for (const std::string& w : report.warnings) out << "# warning: " << w << "\n";
}

void write_json(const SweepReport& report, std::ostream& out) {
  nlohmann::json j;
  j["schema"] = kSweepSchema;
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& r : report.rows) {
    rows.push_back({{"omega_r_rad_s", r.omega_r},
                    {"state_index", r.state_index},
                    {"M_times_2", r.m_times_2},
                    {"parity", std::string(1, r.parity)},
                    {"energy_joule", r.energy_j},
                    {"total_phase_rad", r.total},
                    {"dynamical_phase_rad", r.dynamical},
                    {"geometric_phase_rad", r.geometric}});
  }
  j["rows"] = rows;
  nlohmann::json zeros = nlohmann::json::array();
  for (const ZeroCrossing& z : report.zeros)
    zeros.push_back({{"relative", z.relative},
                     {"i", z.slot_i},
                     {"j", z.slot_j},
                     {"omega_r_rad_s", z.omega_r}});
  j["zero_phase"] = zeros;
  nlohmann::json gaps = nlohmann::json::array();
  for (const GapEvent& g : report.gaps)
    gaps.push_back({{"i", g.a.slot()},
                    {"j", g.b.slot()},
                    {"omega_r_rad_s", g.omega_r},
                    {"gap_joule", g.gap},
                    {"kind", g.crossing ? "crossing" : "avoided"}});
  j["gaps"] = gaps;
  j["warnings"] = report.warnings;
  out << j.dump(1) << "\n";
}

SweepReport read_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  if (j.value("schema", "") != kSweepSchema)
    throw Error("read_json: unknown schema");
  SweepReport rep;
  for (const auto& r : j.at("rows")) {
    SweepRow row;
    row.omega_r = r.at("omega_r_rad_s").get<double>();
    row.state_index = r.at("state_index").get<int>();
    row.m_times_2 = r.at("M_times_2").get<int>();
    row.parity = r.at("parity").get<std::string>().at(0);
    row.energy_j = r.at("energy_joule").get<double>();
    row.total = r.at("total_phase_rad").get<double>();
    row.dynamical = r.at("dynamical_phase_rad").get<double>();
    row.geometric = r.at("geometric_phase_rad").get<double>();
    rep.rows.push_back(row);
  }
  for (const auto& z : j.at("zero_phase")) {
    ZeroCrossing zc;
    zc.relative = z.at("relative").get<bool>();
    zc.slot_i = z.at("i").get<int>();
    zc.slot_j = z.at("j").get<int>();
    zc.omega_r = z.at("omega_r_rad_s").get<double>();
    rep.zeros.push_back(zc);
  }
  for (const auto& g : j.at("gaps")) {
    GapEvent ge;
    ge.a = label_from_slot(g.at("i").get<int>());
    ge.b = label_from_slot(g.at("j").get<int>());
    ge.omega_r = g.at("omega_r_rad_s").get<double>();
    ge.gap = g.at("gap_joule").get<double>();
    ge.crossing = g.at("kind").get<std::string>() == "crossing";
    rep.gaps.push_back(ge);
  }
  for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
  return rep;
}

void write_gnuplot_stub(const std::string& data_file, std::ostream& out) {
  out << "# gnuplot stub: geometric phase vs rotation rate, one curve per state\n"
      << "set datafile separator ','\n"
      << "set xlabel 'omega_r (rad/s)'\n"
      << "set ylabel 'geometric phase (rad)'\n"
      << "set key outside\n"
      << "plot for [s=0:7] '" << data_file
      << "' using 1:($2 == s ? $8 : 1/0) with lines title sprintf('state %d', s)\n";
}

}  // namespace ohphase
