#pragma once

// Shared fixtures: the figure protocols exercised throughout the suites and a
// deterministic random-protocol generator.

#include <random>
#include <vector>

#include "ohphase/constants.hpp"
#include "ohphase/model.hpp"

namespace ohtest {

using namespace ohphase;

inline MoleculeParams oh() { return MoleculeParams::oh_defaults(); }

// B = 0.1 T cone at pi/8, pure magnetic
inline FieldProtocol fig1b(double omega_r = 0.0) {
  FieldProtocol f;
  f.b_mag = 0.1;
  f.theta_m = constants::kPi / 8.0;
  f.omega_r = omega_r;
  return f;
}

// E = 2 kV/cm cone, pure electric; panel selects theta_e
inline FieldProtocol fig2(int panel, double omega_r = 0.0) {
  FieldProtocol f;
  f.e_mag = 2.0e5;
  const double angles[] = {0.0, constants::kPi / 8.0, constants::kPi / 4.0,
                           3.0 * constants::kPi / 8.0};
  f.theta_e = angles[panel];
  f.omega_r = omega_r;
  return f;
}

// combined fields, theta_m = pi/3, theta_e = pi/8; panel selects B
inline FieldProtocol fig3(int panel, double omega_r = 0.0) {
  FieldProtocol f;
  const double b[] = {0.001, 0.01, 0.1, 1.0};
  f.b_mag = b[panel];
  f.theta_m = constants::kPi / 3.0;
  f.e_mag = 2.0e5;
  f.theta_e = constants::kPi / 8.0;
  f.omega_r = omega_r;
  return f;
}

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline FieldProtocol random_pure_b(std::mt19937& rng) {
  FieldProtocol f;
  std::uniform_real_distribution<double> ang(0.01, constants::kPi - 0.01);
  f.b_mag = log_uniform(rng, 0.01, 1.0);
  f.theta_m = ang(rng);
  f.omega_r = log_uniform(rng, 1.0e8, 1.0e11);
  return f;
}

inline FieldProtocol random_combined(std::mt19937& rng) {
  FieldProtocol f;
  std::uniform_real_distribution<double> ang(0.01, constants::kPi - 0.01);
  f.b_mag = log_uniform(rng, 0.001, 0.5);
  f.theta_m = ang(rng);
  f.e_mag = log_uniform(rng, 0.2e5, 10.0e5);
  f.theta_e = ang(rng);
  f.omega_r = log_uniform(rng, 2.0e9, 5.0e10);
  return f;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    g[static_cast<size_t>(k)] = a + (b - a) * k / (n - 1);
  return g;
}

inline std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  const double la = std::log(a), lb = std::log(b);
  for (int k = 0; k < n; ++k)
    g[static_cast<size_t>(k)] = std::exp(la + (lb - la) * k / (n - 1));
  g.front() = a;
  g.back() = b;
  return g;
}

}  // namespace ohtest
