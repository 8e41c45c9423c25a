#pragma once

#include "qhv/config.hpp"
#include "qhv/steady_state.hpp"
#include "qhv/thermodynamics.hpp"

namespace qhv {

struct HeatFlowRecord {
  double phi = 0.0;
  double omega_q = 0.0;
  double p_l = 0.0;
  double p_r = 0.0;
  double p_l_si = 0.0;
  double p_r_si = 0.0;
  double residual = 0.0;
  double min_eig = 0.0;
  std::string method_label;
  bool ok = true;
  std::string error;
};

// Everything computed at one flux point, for diagnostics-heavy callers.
struct PointResult {
  HeatFlowRecord record;
  GeneratorBundle bundle;
  DensityMatrix state;
};

PointResult solve_point(const SweepConfig& cfg, double phi,
                        const GeneratorMethod& method);

std::vector<double> flux_grid(const SweepConfig& cfg);

// One record per grid point, grid order, per-point failures isolated in the
// record. NumericalAccuracyError when more than 10% of the points fail.
std::vector<HeatFlowRecord> run_sweep(const SweepConfig& cfg);

struct ComparisonResult {
  std::vector<GeneratorMethod> methods;
  // per_method[m][k] is method m at grid point k
  std::vector<std::vector<HeatFlowRecord>> per_method;
  // assembly-plus-solve wall time summed over the grid, per method
  std::vector<double> wall_seconds;
  double max_rel_deviation_p_l = 0.0;
};

// Shares one diagonalization and gap decomposition per flux point across
// methods; times only the method-specific assembly and solve.
ComparisonResult compare_methods(const SweepConfig& cfg,
                                 const std::vector<GeneratorMethod>& methods);

// Header: phi,omega_q_over_OmegaL,P_L_natural,P_R_natural,P_L_watts,
// P_R_watts,residual,min_eig,method. Values at 17 significant digits.
void write_csv(const std::vector<HeatFlowRecord>& records,
               const std::string& path);

struct ValidationReport {
  std::vector<std::string> lines;
  bool passed = true;
};

// Executable invariant suite for a config: rate detailed balance, Hamiltonian
// symmetries, generator trace preservation, steady-state sanity, first law,
// and heat flow with the Lamb shift both disabled and enabled.
ValidationReport validate_config(const SweepConfig& cfg, int points = 3);

}  // namespace qhv
