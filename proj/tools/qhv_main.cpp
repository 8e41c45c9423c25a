// Command-line front end: steady-state heat transport through the
// resonator-qubit-resonator valve as a function of external flux.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhv/errors.hpp"
#include "qhv/sweep.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> methods;
  int points = 0;
  std::string out_path;
  bool no_lamb_shift = false;
  int parallel = 0;
};

void attach_common(CLI::App* cmd, CommonOpts& o, bool method_repeatable) {
  cmd->add_option("--config", o.config_path, "configuration file")
      ->required();
  auto* m = cmd->add_option(
      "--method", o.methods,
      "generator method: redfield | psa[:C] | full_secular | unified[:auto|:DELTA]");
  if (!method_repeatable) m->expected(0, 1);
  cmd->add_option("--points", o.points, "override the flux grid point count");
  cmd->add_option("--out", o.out_path, "override the output CSV path");
  cmd->add_flag("--no-lamb-shift", o.no_lamb_shift,
                "disable the Lamb shift for every bath");
  cmd->add_option("--parallel", o.parallel, "worker thread count");
}

qhv::SweepConfig load_with_overrides(const CommonOpts& o) {
  qhv::SweepConfig cfg = qhv::load_config(o.config_path);
  if (!o.methods.empty()) {
    cfg.method = qhv::GeneratorMethod::parse(o.methods.front());
  }
  if (o.points > 0) cfg.flux_points = o.points;
  if (!o.out_path.empty()) cfg.output_path = o.out_path;
  if (o.no_lamb_shift) {
    for (auto& b : cfg.baths) b.lamb_shift_enabled = false;
  }
  if (o.parallel > 0) cfg.parallelism = o.parallel;
  cfg.validate();
  return cfg;
}

void print_record(const qhv::HeatFlowRecord& r) {
  std::printf("phi            = %.17g\n", r.phi);
  std::printf("omega_q/Omega_L = %.17g\n", r.omega_q);
  std::printf("P_L (natural)  = %.17g\n", r.p_l);
  std::printf("P_R (natural)  = %.17g\n", r.p_r);
  std::printf("P_L (watts)    = %.17g\n", r.p_l_si);
  std::printf("P_R (watts)    = %.17g\n", r.p_r_si);
  std::printf("residual       = %.17g\n", r.residual);
  std::printf("min eigenvalue = %.17g\n", r.min_eig);
  std::printf("method         = %s\n", r.method_label.c_str());
}

int run(int argc, char** argv) {
  CLI::App app{"flux-tunable quantum heat valve simulator"};
  app.require_subcommand(1);

  CommonOpts sweep_o, compare_o, single_o, validate_o;
  double phi = 0.0;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "steady-state heat flow over a flux grid, written as CSV");
  attach_common(sweep, sweep_o, false);

  CLI::App* compare = app.add_subcommand(
      "compare",
      "run several generator methods on one grid and report deviations");
  attach_common(compare, compare_o, true);

  CLI::App* single = app.add_subcommand(
      "single", "solve one flux point and print the full record");
  attach_common(single, single_o, false);
  single->add_option("--phi", phi, "flux in units of the flux quantum")
      ->required();

  CLI::App* validate = app.add_subcommand(
      "validate", "check model invariants for a configuration");
  attach_common(validate, validate_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sweep->parsed()) {
    qhv::SweepConfig cfg = load_with_overrides(sweep_o);
    const auto records = qhv::run_sweep(cfg);
    qhv::write_csv(records, cfg.output_path);
    size_t failed = 0;
    for (const auto& r : records)
      if (!r.ok) ++failed;
    std::printf("wrote %zu points to %s (%zu failed)\n", records.size(),
                cfg.output_path.c_str(), failed);
    return 0;
  }

  if (compare->parsed()) {
    qhv::SweepConfig cfg = load_with_overrides(compare_o);
    std::vector<qhv::GeneratorMethod> methods;
    if (compare_o.methods.empty()) {
      methods = {qhv::GeneratorMethod::redfield(),
                 qhv::GeneratorMethod::partial_secular(100.0),
                 qhv::GeneratorMethod::full_secular(),
                 qhv::GeneratorMethod::unified_auto()};
    } else {
      for (const auto& name : compare_o.methods)
        methods.push_back(qhv::GeneratorMethod::parse(name));
    }
    const qhv::ComparisonResult res = qhv::compare_methods(cfg, methods);
    for (size_t m = 0; m < methods.size(); ++m) {
      size_t failed = 0;
      for (const auto& r : res.per_method[m])
        if (!r.ok) ++failed;
      std::printf("%-18s assembly+solve %8.3f s, %zu/%zu points failed\n",
                  methods[m].label().c_str(), res.wall_seconds[m], failed,
                  res.per_method[m].size());
    }
    std::printf("max relative P_L deviation across methods: %.6g\n",
                res.max_rel_deviation_p_l);
    if (!compare_o.out_path.empty()) {
      std::vector<qhv::HeatFlowRecord> all;
      for (const auto& v : res.per_method)
        all.insert(all.end(), v.begin(), v.end());
      qhv::write_csv(all, compare_o.out_path);
      std::printf("wrote %zu rows to %s\n", all.size(),
                  compare_o.out_path.c_str());
    }
    return 0;
  }

  if (single->parsed()) {
    qhv::SweepConfig cfg = load_with_overrides(single_o);
    const qhv::PointResult pt = qhv::solve_point(cfg, phi, cfg.method);
    print_record(pt.record);
    return 0;
  }

  // validate
  qhv::SweepConfig cfg = load_with_overrides(validate_o);
  const int probe_points = validate_o.points > 0 ? validate_o.points : 3;
  const qhv::ValidationReport rep = qhv::validate_config(cfg, probe_points);
  for (const auto& line : rep.lines) std::printf("%s\n", line.c_str());
  if (!rep.passed) {
    std::fprintf(stderr, "validation failed\n");
    return 2;
  }
  std::printf("validation passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qhv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const qhv::FileError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const qhv::Error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
