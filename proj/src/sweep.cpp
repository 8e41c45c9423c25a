#include "qhv/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "qhv/errors.hpp"

namespace qhv {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void fill_failure(HeatFlowRecord& r, const std::string& what) {
  r.p_l = kNan;
  r.p_r = kNan;
  r.p_l_si = kNan;
  r.p_r_si = kNan;
  r.residual = kNan;
  r.min_eig = kNan;
  r.ok = false;
  r.error = what;
}

HeatFlowRecord record_from_state(const SweepConfig& cfg, double phi,
                                 const GeneratorMethod& method,
                                 const GeneratorBundle& bundle,
                                 const DensityMatrix& state) {
  HeatFlowRecord r;
  r.phi = phi;
  r.omega_q =
      transmon_frequency(phi, cfg.circuit.transmon) / cfg.circuit.omega_l;
  r.p_l = heat_flow_trace(bundle.h_eig, bundle.baths[0].dissipator,
                          state.matrix);
  r.p_r = heat_flow_trace(bundle.h_eig, bundle.baths[1].dissipator,
                          state.matrix);
  const double w_si = cfg.omega_l_si();
  r.p_l_si = to_si_power(r.p_l, w_si);
  r.p_r_si = to_si_power(r.p_r, w_si);
  r.residual = state.residual;
  r.min_eig = state.diagnostics.min_eigenvalue;
  r.method_label = method.label();
  return r;
}

HeatFlowRecord compute_point(const SweepConfig& cfg, double phi,
                             const GeneratorMethod& method) {
  try {
    PointResult pr = solve_point(cfg, phi, method);
    return pr.record;
  } catch (const std::exception& e) {
    HeatFlowRecord r;
    r.phi = phi;
    r.omega_q =
        transmon_frequency(phi, cfg.circuit.transmon) / cfg.circuit.omega_l;
    r.method_label = method.label();
    fill_failure(r, e.what());
    return r;
  }
}

}  // namespace

PointResult solve_point(const SweepConfig& cfg, double phi,
                        const GeneratorMethod& method) {
  const CompositeSpace space =
      resonator_qubit_resonator_space(cfg.circuit.n_res_levels);
  const Mat h_s = build_system_hamiltonian(cfg.circuit, phi);
  PointResult out;
  out.bundle = build_generator(h_s, space, cfg.baths, method, cfg.tolerances);
  out.state = solve_steady_state(out.bundle.liouvillian, cfg.tolerances.solver,
                                 cfg.tolerances.pos_tol);
  out.record = record_from_state(cfg, phi, method, out.bundle, out.state);
  return out;
}

std::vector<double> flux_grid(const SweepConfig& cfg) {
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(cfg.flux_points));
  if (cfg.flux_points == 1) {
    grid.push_back(cfg.flux_start);
    return grid;
  }
  const double span = cfg.flux_stop - cfg.flux_start;
  for (int k = 0; k < cfg.flux_points; ++k) {
    grid.push_back(cfg.flux_start + span * k / (cfg.flux_points - 1));
  }
  return grid;
}

std::vector<HeatFlowRecord> run_sweep(const SweepConfig& cfg) {
  const std::vector<double> grid = flux_grid(cfg);
  std::vector<HeatFlowRecord> records(grid.size());

  const size_t n = grid.size();
  size_t workers = static_cast<size_t>(std::max(1, cfg.parallelism));
  workers = std::min(workers, n);

  if (workers <= 1) {
    for (size_t k = 0; k < n; ++k) {
      records[k] = compute_point(cfg, grid[k], cfg.method);
    }
  } else {
    // Points are independent; each index is computed by exactly one worker,
    // so the result is identical to the serial pass regardless of schedule.
    std::atomic<size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const size_t k = next.fetch_add(1);
        if (k >= n) return;
        records[k] = compute_point(cfg, grid[k], cfg.method);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  size_t failures = 0;
  std::string first_error;
  for (const auto& r : records) {
    if (!r.ok) {
      if (failures == 0) first_error = r.error;
      ++failures;
    }
  }
  if (failures * 10 > n) {
    std::ostringstream msg;
    msg << "sweep failed at " << failures << " of " << n
        << " grid points (first failure: " << first_error << ")";
    throw NumericalAccuracyError(msg.str());
  }
  return records;
}

ComparisonResult compare_methods(const SweepConfig& cfg,
                                 const std::vector<GeneratorMethod>& methods) {
  if (methods.empty()) throw ConfigError("compare needs at least one method");
  const std::vector<double> grid = flux_grid(cfg);
  const CompositeSpace space =
      resonator_qubit_resonator_space(cfg.circuit.n_res_levels);

  ComparisonResult out;
  out.methods = methods;
  out.per_method.assign(methods.size(), {});
  out.wall_seconds.assign(methods.size(), 0.0);
  for (auto& v : out.per_method) v.reserve(grid.size());

  using clock = std::chrono::steady_clock;
  for (double phi : grid) {
    const Mat h_s = build_system_hamiltonian(cfg.circuit, phi);
    const SharedPrep prep =
        prepare_point(h_s, space, cfg.baths, cfg.tolerances);
    for (size_t m = 0; m < methods.size(); ++m) {
      HeatFlowRecord rec;
      const auto t0 = clock::now();
      try {
        const GeneratorBundle bundle =
            assemble_from_prep(prep, cfg.baths, methods[m], cfg.tolerances);
        const DensityMatrix state =
            solve_steady_state(bundle.liouvillian, cfg.tolerances.solver,
                               cfg.tolerances.pos_tol);
        out.wall_seconds[m] +=
            std::chrono::duration<double>(clock::now() - t0).count();
        rec = record_from_state(cfg, phi, methods[m], bundle, state);
      } catch (const std::exception& e) {
        out.wall_seconds[m] +=
            std::chrono::duration<double>(clock::now() - t0).count();
        rec.phi = phi;
        rec.omega_q =
            transmon_frequency(phi, cfg.circuit.transmon) / cfg.circuit.omega_l;
        rec.method_label = methods[m].label();
        fill_failure(rec, e.what());
      }
      out.per_method[m].push_back(std::move(rec));
    }
  }

  double max_dev = 0.0;
  for (size_t a = 0; a < methods.size(); ++a) {
    for (size_t b = a + 1; b < methods.size(); ++b) {
      for (size_t k = 0; k < grid.size(); ++k) {
        const auto& ra = out.per_method[a][k];
        const auto& rb = out.per_method[b][k];
        if (!ra.ok || !rb.ok) continue;
        const double denom = std::max(std::abs(ra.p_l), std::abs(rb.p_l));
        if (denom < 1e-300) continue;
        max_dev = std::max(max_dev, std::abs(ra.p_l - rb.p_l) / denom);
      }
    }
  }
  out.max_rel_deviation_p_l = max_dev;
  return out;
}

void write_csv(const std::vector<HeatFlowRecord>& records,
               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open output file: " + path);
  out << "phi,omega_q_over_OmegaL,P_L_natural,P_R_natural,P_L_watts,"
         "P_R_watts,residual,min_eig,method\n";
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", r.phi,
                  r.omega_q, r.p_l, r.p_r, r.p_l_si, r.p_r_si, r.residual,
                  r.min_eig);
    out << buf << r.method_label << '\n';
  }
  out.flush();
  if (!out) throw FileError("write failed: " + path);
}

namespace {

void add_line(ValidationReport& rep, bool ok, const std::string& text) {
  rep.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + text);
  rep.passed = rep.passed && ok;
}

void add_info(ValidationReport& rep, const std::string& text) {
  rep.lines.push_back("INFO " + text);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

Mat excitation_number_operator(const CircuitParams& c) {
  const CompositeSpace space =
      resonator_qubit_resonator_space(c.n_res_levels);
  const Mat a = annihilation(c.n_res_levels);
  const Mat n_res = a.adjoint() * a;
  Mat n_qubit = Mat::Zero(2, 2);
  n_qubit(1, 1) = 1.0;
  return tensor_embed(n_res, 0, space) + tensor_embed(n_qubit, 1, space) +
         tensor_embed(n_res, 2, space);
}

}  // namespace

ValidationReport validate_config(const SweepConfig& cfg, int points) {
  ValidationReport rep;
  cfg.validate();
  if (points < 1) points = 1;

  // Rate detailed balance: gamma(-w) = gamma(w) exp(-w/T) on a frequency
  // sweep spanning the spectral model's scale.
  for (const auto& b : cfg.baths) {
    const char* side = b.side == BathSide::L ? "L" : "R";
    double worst = 0.0;
    const double w_max = 3.0 * b.model.scale();
    const int n_freq = 100;
    for (int i = 1; i <= n_freq; ++i) {
      const double w = w_max * i / n_freq;
      const double down = rate_gamma(b, w);
      const double up = rate_gamma(b, -w);
      if (down < 1e-300) continue;
      worst = std::max(worst,
                       std::abs(up - down * std::exp(-w / b.temperature)) /
                           down);
    }
    add_line(rep, worst <= 1e-10,
             std::string("bath.") + side +
                 " rate detailed balance (worst rel err " + fmt(worst) + ")");
  }

  const CompositeSpace space =
      resonator_qubit_resonator_space(cfg.circuit.n_res_levels);
  SweepConfig probe = cfg;
  probe.flux_points = points;
  const std::vector<double> grid = flux_grid(probe);

  SweepConfig lamb_off = cfg;
  for (auto& b : lamb_off.baths) b.lamb_shift_enabled = false;
  SweepConfig lamb_on = cfg;
  for (auto& b : lamb_on.baths) b.lamb_shift_enabled = true;
  SweepConfig isothermal = lamb_off;
  isothermal.baths[1].temperature = isothermal.baths[0].temperature;

  const Mat n_op = excitation_number_operator(cfg.circuit);

  double worst_herm = 0.0, worst_commute = 0.0, worst_unital = 0.0;
  double worst_first_law = 0.0, worst_null = 0.0, worst_residual = 0.0;
  double worst_min_eig = 0.0;
  bool solves_ok = true;
  std::string solve_error;

  for (double phi : grid) {
    const Mat h = build_system_hamiltonian(cfg.circuit, phi);
    const double h_norm = std::max(frobenius(h), 1e-300);
    worst_herm = std::max(worst_herm, frobenius(h - h.adjoint()) / h_norm);
    worst_commute =
        std::max(worst_commute, frobenius(h * n_op - n_op * h) / h_norm);

    try {
      const PointResult pt = solve_point(lamb_off, phi, cfg.method);
      const Mat& l = pt.bundle.liouvillian.matrix;
      const int d = pt.bundle.liouvillian.dim;
      Vec id_vec = vec_column_stacked(Mat::Identity(d, d));
      worst_unital = std::max(
          worst_unital, (l.adjoint() * id_vec).norm() /
                            std::max(frobenius(l), 1e-300));
      worst_residual = std::max(
          worst_residual,
          pt.record.residual / std::max(frobenius(l), 1e-300));
      worst_min_eig = std::min(worst_min_eig, pt.record.min_eig);
      const double denom =
          std::max({std::abs(pt.record.p_l), std::abs(pt.record.p_r), 1e-300});
      worst_first_law = std::max(
          worst_first_law, std::abs(pt.record.p_l + pt.record.p_r) / denom);

      const PointResult iso = solve_point(isothermal, phi, cfg.method);
      double max_gamma = 0.0;
      for (const auto& bp : iso.bundle.baths)
        for (double gv : bp.response.gamma)
          max_gamma = std::max(max_gamma, std::abs(gv));
      const double alpha2 = iso.bundle.baths.empty()
                                ? 1.0
                                : cfg.baths[0].alpha * cfg.baths[0].alpha;
      const double null_scale =
          std::max(alpha2 * frobenius(iso.bundle.h_eig) * max_gamma, 1e-300);
      worst_null = std::max(
          worst_null,
          std::max(std::abs(iso.record.p_l), std::abs(iso.record.p_r)) /
              null_scale);
    } catch (const std::exception& e) {
      solves_ok = false;
      if (solve_error.empty()) solve_error = e.what();
    }
  }

  add_line(rep, worst_herm <= 1e-12,
           "Hamiltonian hermiticity (worst rel defect " + fmt(worst_herm) +
               ")");
  add_line(rep, worst_commute <= 1e-10,
           "Hamiltonian conserves total excitation number (worst rel defect " +
               fmt(worst_commute) + ")");
  add_line(rep, solves_ok,
           solves_ok ? "steady state solvable at all probe points"
                     : "steady state solve failed: " + solve_error);
  if (solves_ok) {
    add_line(rep, worst_unital <= 1e-10,
             "generator preserves trace (worst rel defect " +
                 fmt(worst_unital) + ")");
    add_line(rep, worst_residual <= cfg.tolerances.solver,
             "steady-state residual within solver tolerance (worst " +
                 fmt(worst_residual) + ")");
    add_line(rep, worst_min_eig >= -cfg.tolerances.pos_tol,
             "steady-state positivity (most negative eigenvalue " +
                 fmt(worst_min_eig) + ")");
    add_line(rep, worst_first_law <= 1e-8,
             "heat flows balance without Lamb shift (worst rel imbalance " +
                 fmt(worst_first_law) + ")");
    add_line(rep, worst_null <= 1e-8,
             "equal temperatures give zero current (worst scaled current " +
                 fmt(worst_null) + ")");
  }

  // Informational: Lamb shift on vs off at the center probe point.
  try {
    const double phi_mid = grid[grid.size() / 2];
    const PointResult off = solve_point(lamb_off, phi_mid, cfg.method);
    const PointResult on = solve_point(lamb_on, phi_mid, cfg.method);
    add_info(rep, "P_L at phi=" + fmt(phi_mid) + ": " + fmt(off.record.p_l) +
                      " (Lamb shift off), " + fmt(on.record.p_l) +
                      " (Lamb shift on)");
  } catch (const std::exception& e) {
    add_info(rep, std::string("Lamb shift comparison unavailable: ") +
                      e.what());
  }

  return rep;
}

}  // namespace qhv
