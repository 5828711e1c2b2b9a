#include "ohphase/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ohphase/constants.hpp"
#include "ohphase/dressing.hpp"
#include "ohphase/floquet_pt.hpp"
#include "ohphase/oracle.hpp"
#include "ohphase/phase.hpp"
#include "ohphase/report.hpp"
#include "ohphase/threading.hpp"

namespace ohphase::cli {

namespace {

using constants::kTwoPi;

FieldProtocol fields_with_omega(const RunConfig& cfg, double omega) {
  FieldProtocol f = cfg.fields;
  f.omega_r = omega;
  return f;
}

SweepReport build_report(const RunConfig& cfg, const TrackedSweep& sweep,
                         std::ostream& diag) {
  const std::vector<PhaseRecord> phases = phases_on_sweep(sweep);
  SweepReport rep = make_report(sweep, phases);
  for (const ZeroCrossing& z : find_zero_phase(sweep, ZeroMode::single_state))
    rep.zeros.push_back(z);
  for (const ZeroCrossing& z : find_zero_phase(sweep, ZeroMode::relative))
    rep.zeros.push_back(z);
  rep.gaps = find_spectrum_gaps(sweep);
  rep.warnings = cfg.fields.validity_warnings();

  if (cfg.oracle_check) {
    // spot-check the propagator identity at three grid points
    const size_t n = sweep.grid.size();
    for (size_t k : {size_t{0}, n / 2, n - 1}) {
      const double w = sweep.grid[k];
      if (w <= 0.0) continue;
      const FieldProtocol f = fields_with_omega(cfg, w);
      const PropagatorResult pr = propagate_period(cfg.molecule, f, 4096);
      const Mat8 hd = dress(cfg.molecule, f).m;
      const double dev = max_abs(
          pr.u + exp_i_hermitian(hd, -(kTwoPi / w) / cfg.molecule.hbar));
      std::ostringstream msg;
      msg << "oracle identity at omega_r=" << format_g17(w)
          << ": max deviation " << format_g17(dev)
          << (dev < 1.0e-8 ? " (ok)" : " (EXCEEDS 1e-8)");
      rep.warnings.push_back(msg.str());
    }
  }
  if (cfg.pt_compare && cfg.fields.b_mag > 0.0) {
    const double pt2 = pt2_phase(cfg.molecule, cfg.fields);
    const double pt3 =
        pt3_phase(cfg.molecule, cfg.fields, cfg.pt3_omega_l_squared);
    std::ostringstream msg;
    msg << "floquet pt: order2=" << format_g17(pt2)
        << " rad, order3=" << format_g17(pt3) << " rad";
    if (cfg.fields.theta_m > kSmallAngleWarn ||
        cfg.fields.theta_e > kSmallAngleWarn)
      msg << " (tilt angles above the small-angle regime)";
    rep.warnings.push_back(msg.str());
  }

  for (const std::string& w : rep.warnings) diag << "warning: " << w << "\n";
  return rep;
}

void emit_report(const RunConfig& cfg, const SweepReport& rep,
                 const std::string& suffix, std::ostream& diag) {
  const bool csv = cfg.format == OutputFormat::csv;
  const std::string path = cfg.prefix + (csv ? ".csv" : ".json") + suffix;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  if (csv)
    write_csv(rep, out);
  else
    write_json(rep, out);
  diag << "wrote " << path << "\n";
  if (cfg.gnuplot && csv && suffix.empty()) {
    const std::string gp = cfg.prefix + ".gp";
    std::ofstream gout(gp, std::ios::binary);
    write_gnuplot_stub(path, gout);
    diag << "wrote " << gp << "\n";
  }
}

}  // namespace

double verify_omega(const RunConfig& cfg) {
  if (cfg.log_scale) return std::sqrt(cfg.omega_r_min * cfg.omega_r_max);
  return 0.5 * (cfg.omega_r_min + cfg.omega_r_max);
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass || c.skipped; });
}

int cmd_sweep(const RunConfig& cfg, int threads, std::ostream& diag) {
  if (cfg.e_rate_scale != 1.0)
    throw ConfigError(
        "omega_r_e_scale != 1 is outside the co-rotating family; only the "
        "verify command accepts it");
  const std::vector<double> grid = cfg.make_grid();
  try {
    const TrackedSweep sweep =
        track_sweep(cfg.molecule, cfg.fields, grid, resolve_threads(threads));
    emit_report(cfg, build_report(cfg, sweep, diag), "", diag);
    return 0;
  } catch (const TrackingBreakdown& tb) {
    diag << "tracking breakdown in [" << tb.omega_lo << ", " << tb.omega_hi
         << "] rad/s; retaining partial output\n";
    std::vector<double> partial;
    for (double w : grid)
      if (w <= tb.omega_lo) partial.push_back(w);
    if (partial.size() >= 2) {
      try {
        const TrackedSweep sweep = track_sweep(cfg.molecule, cfg.fields,
                                               partial, resolve_threads(threads));
        emit_report(cfg, build_report(cfg, sweep, diag), ".partial", diag);
      } catch (const Error& e) {
        diag << "partial output failed too: " << e.what() << "\n";
      }
    }
    return 3;
  }
}

int cmd_critical(const RunConfig& cfg, int threads, std::ostream& out,
                 std::ostream& diag) {
  if (cfg.e_rate_scale != 1.0)
    throw ConfigError(
        "omega_r_e_scale != 1 is outside the co-rotating family; only the "
        "verify command accepts it");
  const std::vector<double> grid = cfg.make_grid();
  TrackedSweep sweep;
  try {
    sweep = track_sweep(cfg.molecule, cfg.fields, grid, resolve_threads(threads));
  } catch (const TrackingBreakdown& tb) {
    diag << "tracking breakdown in [" << tb.omega_lo << ", " << tb.omega_hi
         << "] rad/s\n";
    return 3;
  }

  const std::vector<ZeroCrossing> singles =
      find_zero_phase(sweep, ZeroMode::single_state);
  const std::vector<ZeroCrossing> pairs =
      find_zero_phase(sweep, ZeroMode::relative);

  out << "zero-phase rotation rates (rad/s)\n";
  if (singles.empty()) out << "  single-state: none on the sweep grid\n";
  for (const ZeroCrossing& z : singles)
    out << "  state " << label_from_slot(z.slot_i).str() << ": "
        << format_g17(z.omega_r) << "\n";
  if (pairs.empty()) out << "  relative: none on the sweep grid\n";
  for (const ZeroCrossing& z : pairs)
    out << "  pair " << label_from_slot(z.slot_i).str() << " / "
        << label_from_slot(z.slot_j).str() << ": " << format_g17(z.omega_r)
        << "\n";

  if (cfg.fields.e_mag == 0.0) {
    try {
      const double wc = critical_rotation_magnetic(cfg.molecule, cfg.fields);
      out << "closed-form critical rate 2*omega_L*cos(theta_m): "
          << format_g17(wc) << " rad/s\n";
      out << "advisory: quoted caption value 13.8 GHz corresponds to "
          << format_g17(13.8e9) << " rad/s (or " << format_g17(kTwoPi * 13.8e9)
          << " as an ordinary frequency); not asserted\n";
    } catch (const NoCriticalRate&) {
      out << "no critical rate: cos(theta_m) <= 0\n";
    }
  }
  return 0;
}

VerifyReport run_verify(const RunConfig& cfg, int threads) {
  VerifyReport rep;
  const double w = verify_omega(cfg);
  const FieldProtocol f = fields_with_omega(cfg, w);
  const MoleculeParams& p = cfg.molecule;
  const bool bichromatic = cfg.e_rate_scale != 1.0;

  // 1. dressed-matrix time independence
  Mat8 hd;
  bool have_hd = false;
  {
    VerifyCheck c{"dressing_residual", false, false, 0.0, kDressResidualTol};
    try {
      const DressedMatrix d =
          bichromatic ? dress_raw(p, RawProtocol{f, cfg.e_rate_scale})
                      : dress(p, f);
      c.value = d.residual;
      c.pass = true;
      hd = d.m;
      have_hd = true;
    } catch (const NonCancellation& nc) {
      c.value = nc.residual;
      c.pass = false;
    }
    rep.checks.push_back(c);
  }

  // 2. antiperiodicity W(T) = -I
  {
    VerifyCheck c{"antiperiodicity", false, false, 0.0, 1.0e-12};
    try {
      const cplx v = antiperiodicity_factor(f);
      c.value = std::abs(v - cplx{-1.0, 0.0});
      c.pass = true;
    } catch (const Error&) {
      c.pass = false;
    }
    rep.checks.push_back(c);
  }

  // 3. hermiticity of H(0) and H_d
  {
    VerifyCheck c{"hermiticity", false, false, 0.0, 1.0e-14};
    const Mat8 h0 = build_hamiltonian(p, f, 0.0).m;
    double dev = hermitian_defect(h0) / std::max(max_abs(h0), 1.0e-300);
    if (have_hd)
      dev = std::max(dev, hermitian_defect(hd) / std::max(max_abs(hd), 1.0e-300));
    c.value = dev;
    c.pass = dev < c.threshold;
    rep.checks.push_back(c);
  }

  // 4. pure-B closed-form equivalence
  {
    VerifyCheck c{"closed_form_match", false, false, 0.0, 1.0e-12};
    if (cfg.fields.e_mag != 0.0 || bichromatic) {
      c.skipped = true;
    } else {
      double worst = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double wk =
            cfg.omega_r_min +
            (cfg.omega_r_max - cfg.omega_r_min) * (k + 0.5) / 8.0;
        const FieldProtocol fk = fields_with_omega(cfg, wk);
        const DressedSpectrum s = eigh_spectrum(dress(p, fk).m);
        const DerivedFrequencies d = derived_frequencies(p, fk);
        const double root = std::sqrt(d.omega_l * d.omega_l + wk * wk -
                                      2.0 * d.omega_l * wk * std::cos(fk.theta_m));
        std::array<double, kDim> expect;
        int idx = 0;
        for (int eps = -1; eps <= 1; eps += 2)
          for (int m2 = -3; m2 <= 3; m2 += 2)
            expect[static_cast<size_t>(idx++)] =
                0.5 * eps * p.hbar * p.delta + 0.5 * m2 * p.hbar * root;
        std::sort(expect.begin(), expect.end());
        double scale = 0.0;
        for (double e : expect) scale = std::max(scale, std::abs(e));
        for (int i = 0; i < kDim; ++i)
          worst = std::max(worst,
                           std::abs(s.energy[static_cast<size_t>(i)] -
                                    expect[static_cast<size_t>(i)]) /
                               scale);
      }
      c.value = worst;
      c.pass = worst < c.threshold;
    }
    rep.checks.push_back(c);
  }

  // 5/6. propagator identity and quasi-energies
  {
    VerifyCheck c5{"oracle_identity", false, false, 0.0, 1.0e-8};
    VerifyCheck c6{"quasi_energy_match", false, false, 0.0, 1.0e-7};
    if (!have_hd || w <= 0.0 || bichromatic) {
      c5.skipped = c6.skipped = true;
    } else {
      const PropagatorResult pr = propagate_period(p, f, 4096);
      const double period = kTwoPi / w;
      c5.value = max_abs(pr.u + exp_i_hermitian(hd, -period / p.hbar));
      c5.pass = c5.value < c5.threshold;

      const std::array<cplx, kDim> uvals = unitary_eigenvalues(pr.u);
      const EighResult ed = eigh8(hd);
      double worst = 0.0;
      std::array<bool, kDim> used{};
      for (int i = 0; i < kDim; ++i) {
        const cplx want = -std::polar(1.0, -ed.w[static_cast<size_t>(i)] * period / p.hbar);
        double best = 1.0e300;
        int bj = -1;
        for (int j = 0; j < kDim; ++j) {
          if (used[static_cast<size_t>(j)]) continue;
          const double dist = std::abs(uvals[static_cast<size_t>(j)] - want);
          if (dist < best) {
            best = dist;
            bj = j;
          }
        }
        used[static_cast<size_t>(bj)] = true;
        worst = std::max(worst, best);
      }
      c6.value = worst;
      c6.pass = worst < c6.threshold;
    }
    rep.checks.push_back(c5);
    rep.checks.push_back(c6);
  }

  // 7/8. phase symmetries on a coarse sweep
  {
    VerifyCheck c7{"reflection_symmetry", false, false, 0.0, 1.0e-8};
    VerifyCheck c8{"parity_independence", false, false, 0.0, 1.0e-10};
    if (bichromatic) {
      c7.skipped = c8.skipped = true;
    } else {
      const std::vector<double> grid = cfg.make_grid();
      std::vector<double> coarse;
      const size_t stride = std::max<size_t>(1, grid.size() / 16);
      for (size_t k = 0; k < grid.size(); k += stride)
        if (grid[k] > 0.0) coarse.push_back(grid[k]);
      const TrackedSweep sweep =
          track_sweep(p, cfg.fields, coarse, resolve_threads(threads));
      const std::vector<PhaseRecord> phases = phases_on_sweep(sweep);
      double worst7 = 0.0, worst8 = 0.0;
      for (const PhaseRecord& rec : phases) {
        std::array<double, kDim> g;
        for (int s = 0; s < kDim; ++s)
          g[static_cast<size_t>(s)] = rec.states[static_cast<size_t>(s)].geometric;
        std::array<double, kDim> neg;
        for (int s = 0; s < kDim; ++s) neg[static_cast<size_t>(s)] = -g[static_cast<size_t>(s)];
        std::sort(g.begin(), g.end());
        std::sort(neg.begin(), neg.end());
        for (int s = 0; s < kDim; ++s)
          worst7 = std::max(worst7, std::abs(g[static_cast<size_t>(s)] -
                                             neg[static_cast<size_t>(s)]));
        for (int s = 0; s < 4; ++s)
          worst8 = std::max(
              worst8, std::abs(rec.states[static_cast<size_t>(s)].geometric -
                               rec.states[static_cast<size_t>(s + 4)].geometric));
      }
      c7.value = worst7;
      c7.pass = worst7 < c7.threshold;
      if (cfg.fields.e_mag == 0.0) {
        c8.value = worst8;
        c8.pass = worst8 < c8.threshold;
      } else {
        c8.skipped = true;
      }
    }
    rep.checks.push_back(c7);
    rep.checks.push_back(c8);
  }

  // 9. trace preservation under diagonalization
  {
    VerifyCheck c{"trace_preservation", false, false, 0.0, 1.0e-12};
    if (have_hd) {
      const EighResult e = eigh8(hd);
      double sum = 0.0, scale = 0.0;
      for (double x : e.w) {
        sum += x;
        scale = std::max(scale, std::abs(x));
      }
      c.value = std::abs(sum - std::real(trace(hd))) / std::max(scale, 1.0e-300);
      c.pass = c.value < c.threshold;
    } else {
      c.skipped = true;
    }
    rep.checks.push_back(c);
  }

  if (cfg.fields.e_mag == 0.0 && !bichromatic) {
    try {
      const double wc = critical_rotation_magnetic(p, cfg.fields);
      std::ostringstream adv;
      adv << "closed-form critical rate: " << format_g17(wc)
          << " rad/s; quoted caption value 13.8 GHz = " << format_g17(13.8e9)
          << " rad/s (angular reading) deviates by "
          << format_g17(std::abs(wc - 13.8e9) / 13.8e9)
          << " relative; advisory only, not asserted";
      rep.advisories.push_back(adv.str());
    } catch (const NoCriticalRate&) {
    }
  }
  return rep;
}

int cmd_verify(const RunConfig& cfg, int threads, std::ostream& out,
               std::ostream& diag) {
  const VerifyReport rep = run_verify(cfg, threads);
  nlohmann::json j;
  j["schema"] = "ohphase.verify.v1";
  nlohmann::json checks = nlohmann::json::array();
  for (const VerifyCheck& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"skipped", c.skipped},
                      {"value", c.value},
                      {"threshold", c.threshold}});
    diag << (c.skipped ? "skip " : (c.pass ? "pass " : "FAIL ")) << c.name
         << " value=" << format_g17(c.value)
         << " threshold=" << format_g17(c.threshold) << "\n";
  }
  j["checks"] = checks;
  j["advisories"] = rep.advisories;
  j["all_pass"] = rep.all_pass();
  out << j.dump(1) << "\n";

  const std::string path = cfg.prefix + ".verify.json";
  std::ofstream fout(path, std::ios::binary);
  if (fout) {
    fout << j.dump(1) << "\n";
    diag << "wrote " << path << "\n";
  }
  return rep.all_pass() ? 0 : 4;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"geometric phases of ground-state OH in rotating fields"};
  app.require_subcommand(1);

  std::string config_path, output_dir, format;
  int threads = 0;
  app.add_option("--output-dir", output_dir, "directory for output files");
  app.add_option("--format", format, "override output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads (0 = all)");

  CLI::App* sweep = app.add_subcommand("sweep", "run an omega_r sweep");
  CLI::App* critical =
      app.add_subcommand("critical", "locate zero-phase rotation rates");
  CLI::App* verify =
      app.add_subcommand("verify", "run the internal consistency suite");
  for (CLI::App* sub : {sweep, critical, verify})
    sub->add_option("config", config_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = parse_config_file(config_path);
    if (!format.empty())
      cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    if (!output_dir.empty()) cfg.prefix = output_dir + "/" + cfg.prefix;

    if (sweep->parsed()) return cmd_sweep(cfg, threads, std::cerr);
    if (critical->parsed())
      return cmd_critical(cfg, threads, std::cout, std::cerr);
    return cmd_verify(cfg, threads, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const TrackingBreakdown& e) {
    std::cerr << "tracking failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ohphase::cli
