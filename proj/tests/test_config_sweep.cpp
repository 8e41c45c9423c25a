#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qhv/config.hpp"
#include "qhv/errors.hpp"
#include "qhv/sweep.hpp"

using namespace qhv;

namespace {

// small, fast model used by the sweep-level tests
const char* kSmallConfig = R"(
# two-level resonators keep the generator small
method = psa:100
circuit.n_res_levels = 2
flux.points = 3

bath.L.model = ohmic
bath.L.temperature_mK = 308
bath.L.alpha = 0.04

bath.R.model = ohmic
bath.R.temperature_mK = 100
bath.R.alpha = 0.04
)";

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("parsing fills defaults") {
  const SweepConfig cfg = parse_config_text(kSmallConfig);
  CHECK(cfg.method.label() == "psa:100");
  CHECK(cfg.circuit.n_res_levels == 2);
  CHECK(cfg.circuit.omega_l == 1.0);
  CHECK(cfg.circuit.g == 0.015);
  CHECK(cfg.circuit.g12 == 0.007);
  CHECK(cfg.circuit.transmon.e_j0 == 28.75);
  CHECK(cfg.flux_start == 0.0);
  CHECK(cfg.flux_stop == 1.0);
  CHECK(cfg.flux_points == 3);
  CHECK(cfg.parallelism == 1);
  CHECK(cfg.output_path == "sweep.csv");
  CHECK(cfg.omega_l_ghz == 5.3122);
  REQUIRE(cfg.baths.size() == 2);
  CHECK(cfg.baths[0].side == BathSide::L);
  CHECK(cfg.baths[0].model.kind == SpectralModel::Kind::Ohmic);
  CHECK(cfg.baths[0].model.chi == 1.0);
  CHECK(cfg.baths[0].model.omega_c == 50.0);
  CHECK_FALSE(cfg.baths[0].lamb_shift_enabled);
  // 308 mK at 5.3122 GHz in natural units, frozen
  CHECK(cfg.baths[0].temperature ==
        doctest::Approx(1.2081018587246581).epsilon(1e-13));
  CHECK(cfg.baths[1].temperature ==
        doctest::Approx(0.3922408632222916).epsilon(1e-13));
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("millikelvin conversion") {
  CHECK(millikelvin_to_natural(308.0, 5.3122) ==
        doctest::Approx(1.2081018587246581).epsilon(1e-13));
  CHECK(millikelvin_to_natural(100.0, 5.3122) ==
        doctest::Approx(0.3922408632222916).epsilon(1e-13));
  // linear in temperature
  CHECK(millikelvin_to_natural(200.0, 5.3122) ==
        doctest::Approx(2.0 * millikelvin_to_natural(100.0, 5.3122))
            .epsilon(1e-14));
}

TEST_CASE("config rejections name the offending key") {
  // unknown key: the first one in file order is reported
  const std::string unknown = error_of([] {
    parse_config_text(std::string(kSmallConfig) +
                      "circuit.gg = 1\nbath.L.foo = 2\n");
  });
  CHECK(unknown.find("circuit.gg") != std::string::npos);

  const std::string dup = error_of(
      [] { parse_config_text(std::string(kSmallConfig) + "method = psa\n"); });
  CHECK(dup.find("duplicate") != std::string::npos);
  CHECK(dup.find("method") != std::string::npos);

  const std::string missing = error_of([] {
    parse_config_text(
        "method = psa\nbath.L.model = ohmic\nbath.L.alpha = 0.04\n"
        "bath.R.model = ohmic\nbath.R.temperature_mK = 100\n"
        "bath.R.alpha = 0.04\n");
  });
  CHECK(missing.find("bath.L.temperature_mK") != std::string::npos);

  const std::string bad_number = error_of([] {
    parse_config_text(std::string(kSmallConfig) + "circuit.g = fast\n");
  });
  CHECK(bad_number.find("circuit.g") != std::string::npos);

  // inapplicable spectral keys
  const std::string q_on_ohmic = error_of([] {
    parse_config_text(std::string(kSmallConfig) + "bath.L.Q = 20\n");
  });
  CHECK(q_on_ohmic.find("bath.L.Q") != std::string::npos);

  const std::string wc_on_lorentzian = error_of([] {
    parse_config_text(
        "method = psa\n"
        "bath.L.model = lorentzian\nbath.L.temperature_mK = 308\n"
        "bath.L.alpha = 0.04\nbath.L.omega_c = 50\n"
        "bath.R.model = ohmic\nbath.R.temperature_mK = 100\n"
        "bath.R.alpha = 0.04\n");
  });
  CHECK(wc_on_lorentzian.find("bath.L.omega_c") != std::string::npos);

  // syntax and value errors
  CHECK_THROWS_AS(parse_config_text("method psa\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(std::string(kSmallConfig) + "flux.stop = -1\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(std::string(kSmallConfig) + "parallelism = 0\n"),
      ConfigError);
  const std::string bad_method = error_of([] {
    parse_config_text(
        "method = fancy\n"
        "bath.L.model = ohmic\nbath.L.temperature_mK = 308\n"
        "bath.L.alpha = 0.04\n"
        "bath.R.model = ohmic\nbath.R.temperature_mK = 100\n"
        "bath.R.alpha = 0.04\n");
  });
  CHECK(bad_method.find("fancy") != std::string::npos);

  // a bare config is rejected for the first missing required key
  const std::string bare = error_of([] { parse_config_text("method = psa\n"); });
  CHECK(bare.find("bath.L.model") != std::string::npos);

  // out-of-range physics values are config errors at the boundary
  CHECK_THROWS_AS(parse_config_text(std::string(kSmallConfig) +
                                    "transmon.E_C = -0.1\n"),
                  ConfigError);

  CHECK_THROWS_AS(load_config("/nonexistent/qhv.cfg"), ConfigError);
}

TEST_CASE("flux grids") {
  SweepConfig cfg = parse_config_text(kSmallConfig);
  const auto grid = flux_grid(cfg);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == 0.5);
  CHECK(grid[2] == 1.0);

  cfg.flux_start = 0.2;
  cfg.flux_stop = 0.8;
  cfg.flux_points = 4;
  const auto shifted = flux_grid(cfg);
  CHECK(shifted.front() == 0.2);
  CHECK(shifted.back() == 0.8);
}

TEST_CASE("sweep produces ordered physical records") {
  const SweepConfig cfg = parse_config_text(kSmallConfig);
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 3);
  for (size_t k = 0; k < records.size(); ++k) {
    CHECK(records[k].ok);
    CHECK(records[k].method_label == "psa:100");
    CHECK(records[k].p_l > 0.0);
    CHECK(records[k].p_r < 0.0);
    CHECK(std::abs(records[k].p_l + records[k].p_r) <=
          1e-8 * records[k].p_l);
  }
  CHECK(records[0].phi == 0.0);
  CHECK(records[1].phi == 0.5);
  CHECK(records[2].phi == 1.0);
  // flux periodicity of the underlying model
  CHECK(records[0].p_l == doctest::Approx(records[2].p_l).epsilon(1e-9));
}

TEST_CASE("sweep is deterministic and parallel-invariant") {
  SweepConfig cfg = parse_config_text(kSmallConfig);
  const auto first = run_sweep(cfg);
  const auto second = run_sweep(cfg);
  cfg.parallelism = 3;
  const auto parallel = run_sweep(cfg);
  REQUIRE(first.size() == second.size());
  REQUIRE(first.size() == parallel.size());
  for (size_t k = 0; k < first.size(); ++k) {
    // bit-for-bit identical, not approximately equal
    CHECK(first[k].p_l == second[k].p_l);
    CHECK(first[k].p_r == second[k].p_r);
    CHECK(first[k].residual == second[k].residual);
    CHECK(first[k].p_l == parallel[k].p_l);
    CHECK(first[k].p_r == parallel[k].p_r);
    CHECK(first[k].min_eig == parallel[k].min_eig);
  }
}

TEST_CASE("a sweep that fails everywhere reports a summary error") {
  SweepConfig cfg = parse_config_text(kSmallConfig);
  cfg.baths[0].alpha = 0.0;
  cfg.baths[1].alpha = 0.0;  // degenerate kernel at every point
  CHECK_THROWS_AS(run_sweep(cfg), NumericalAccuracyError);
}

TEST_CASE("CSV output round-trips at full precision") {
  const SweepConfig cfg = parse_config_text(kSmallConfig);
  const auto records = run_sweep(cfg);
  const std::string path = "test_roundtrip.csv";
  write_csv(records, path);

  const auto lines = read_lines(path);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "phi,omega_q_over_OmegaL,P_L_natural,P_R_natural,P_L_watts,"
        "P_R_watts,residual,min_eig,method");
  for (size_t k = 0; k < records.size(); ++k) {
    const auto fields = split_csv(lines[k + 1]);
    REQUIRE(fields.size() == 9);
    // 17 significant digits reproduce the doubles exactly
    CHECK(std::stod(fields[0]) == records[k].phi);
    CHECK(std::stod(fields[1]) == records[k].omega_q);
    CHECK(std::stod(fields[2]) == records[k].p_l);
    CHECK(std::stod(fields[3]) == records[k].p_r);
    CHECK(std::stod(fields[4]) == records[k].p_l_si);
    CHECK(std::stod(fields[5]) == records[k].p_r_si);
    CHECK(std::stod(fields[6]) == records[k].residual);
    CHECK(std::stod(fields[7]) == records[k].min_eig);
    CHECK(fields[8] == records[k].method_label);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(write_csv(records, "/nonexistent_dir/out.csv"), FileError);
}

TEST_CASE("method comparison shares the grid and reports deviations") {
  SweepConfig cfg = parse_config_text(kSmallConfig);
  const std::vector<GeneratorMethod> methods{
      GeneratorMethod::partial_secular(100.0),
      GeneratorMethod::unified_auto()};
  const ComparisonResult res = compare_methods(cfg, methods);

  REQUIRE(res.per_method.size() == 2);
  REQUIRE(res.wall_seconds.size() == 2);
  for (const auto& rows : res.per_method) {
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.ok);
  }
  CHECK(res.per_method[0][0].method_label == "psa:100");
  CHECK(res.per_method[1][0].method_label == "unified:auto");
  CHECK(res.wall_seconds[0] > 0.0);
  CHECK(res.wall_seconds[1] > 0.0);
  // the clustered generator tracks the partial-secular one closely here
  CHECK(res.max_rel_deviation_p_l < 0.05);

  // the comparison at matching points equals a plain sweep
  const auto direct = run_sweep(cfg);
  for (size_t k = 0; k < direct.size(); ++k)
    CHECK(res.per_method[0][k].p_l == direct[k].p_l);
}

TEST_CASE("configuration validation report") {
  const SweepConfig cfg = parse_config_text(kSmallConfig);
  const ValidationReport rep = validate_config(cfg, 3);
  CHECK(rep.passed);
  CHECK(rep.lines.size() >= 8);
  for (const auto& line : rep.lines) {
    const bool tagged = line.rfind("PASS ", 0) == 0 ||
                        line.rfind("FAIL ", 0) == 0 ||
                        line.rfind("INFO ", 0) == 0;
    CHECK(tagged);
  }
}
