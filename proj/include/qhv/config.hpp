#pragma once

#include <string>

#include "qhv/generators.hpp"

namespace qhv {

// Full description of one simulation run. Temperatures are stored in
// natural units (k_B T / hbar Omega_L); the millikelvin-to-natural
// conversion happens once, at the config boundary.
struct SweepConfig {
  CircuitParams circuit;
  std::vector<BathSpec> baths;  // exactly two, L then R
  GeneratorMethod method;
  double flux_start = 0.0;
  double flux_stop = 1.0;
  int flux_points = 201;
  ToleranceSet tolerances;
  std::string output_path = "sweep.csv";
  int parallelism = 1;
  double omega_l_ghz = 5.3122;

  double omega_l_si() const;  // rad/s
  void validate() const;
};

double millikelvin_to_natural(double t_mk, double omega_l_ghz);

// Strict flat key-value format with dotted keys ('bath.L.alpha = 0.04',
// '#' starts a comment). Unknown, duplicate, inapplicable or out-of-range
// keys raise ConfigError naming the key.
SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config(const std::string& path);

}  // namespace qhv
