// Python surface: scalar model functions, the system Hamiltonian, and the
// config-driven sweep entry points. Strings and plain containers in, plain
// data out; nothing here keeps C++ state alive across calls.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhv/config.hpp"
#include "qhv/errors.hpp"
#include "qhv/sweep.hpp"

namespace py = pybind11;

namespace {

qhv::SpectralModel make_model(const std::string& kind, double chi,
                              double omega_c, double q, double omega_r) {
  if (kind == "ohmic") return qhv::SpectralModel::ohmic(chi, omega_c);
  if (kind == "lorentzian")
    return qhv::SpectralModel::lorentzian(chi, q, omega_r);
  throw qhv::ConfigError("unknown spectral model kind: " + kind);
}

py::dict record_to_dict(const qhv::HeatFlowRecord& r) {
  py::dict d;
  d["phi"] = r.phi;
  d["omega_q_over_OmegaL"] = r.omega_q;
  d["P_L_natural"] = r.p_l;
  d["P_R_natural"] = r.p_r;
  d["P_L_watts"] = r.p_l_si;
  d["P_R_watts"] = r.p_r_si;
  d["residual"] = r.residual;
  d["min_eig"] = r.min_eig;
  d["method"] = r.method_label;
  d["ok"] = r.ok;
  d["error"] = r.error;
  return d;
}

qhv::SweepConfig load_for_python(const std::string& config_path,
                                 const std::string& method, int points,
                                 int parallel) {
  qhv::SweepConfig cfg = qhv::load_config(config_path);
  if (!method.empty()) cfg.method = qhv::GeneratorMethod::parse(method);
  if (points > 0) cfg.flux_points = points;
  if (parallel > 0) cfg.parallelism = parallel;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "steady-state heat transport through a flux-tunable "
      "resonator-qubit-resonator chain";

  m.def(
      "transmon_frequency",
      [](double phi, double e_c, double e_j0, double d) {
        qhv::TransmonParams p;
        p.e_c = e_c;
        p.e_j0 = e_j0;
        p.d_asym = d;
        p.validate();
        return qhv::transmon_frequency(phi, p);
      },
      py::arg("phi"), py::arg("e_c") = 0.15, py::arg("e_j0") = 28.75,
      py::arg("d") = 0.385,
      "qubit frequency at the given flux, in units of Omega_L");

  m.def("bose_occupancy", &qhv::bose_occupancy, py::arg("omega"),
        py::arg("temperature"),
        "thermal occupation at omega > 0, temperature in natural units");

  m.def(
      "spectral_density",
      [](double omega, const std::string& kind, double chi, double omega_c,
         double q, double omega_r) {
        return qhv::spectral_density(make_model(kind, chi, omega_c, q, omega_r),
                                     omega);
      },
      py::arg("omega"), py::arg("kind") = "ohmic", py::arg("chi") = 1.0,
      py::arg("omega_c") = 50.0, py::arg("q") = 20.0, py::arg("omega_r") = 1.0,
      "bath spectral density J(omega) for omega >= 0");

  m.def(
      "bath_rate",
      [](double omega, double temperature, const std::string& kind, double chi,
         double omega_c, double q, double omega_r) {
        qhv::BathSpec b;
        b.model = make_model(kind, chi, omega_c, q, omega_r);
        b.temperature = temperature;
        return qhv::rate_gamma(b, omega);
      },
      py::arg("omega"), py::arg("temperature"), py::arg("kind") = "ohmic",
      py::arg("chi") = 1.0, py::arg("omega_c") = 50.0, py::arg("q") = 20.0,
      py::arg("omega_r") = 1.0,
      "thermal transition rate gamma(omega), emission for omega > 0 and "
      "absorption for omega < 0, without the coupling prefactor");

  m.def(
      "system_hamiltonian",
      [](double phi, double omega_l, double omega_r, double g, double g12,
         double e_c, double e_j0, double d, int n_res_levels) {
        qhv::CircuitParams c;
        c.omega_l = omega_l;
        c.omega_r = omega_r;
        c.g = g;
        c.g12 = g12;
        c.transmon.e_c = e_c;
        c.transmon.e_j0 = e_j0;
        c.transmon.d_asym = d;
        c.n_res_levels = n_res_levels;
        c.validate();
        return qhv::build_system_hamiltonian(c, phi);
      },
      py::arg("phi"), py::arg("omega_l") = 1.0, py::arg("omega_r") = 1.0,
      py::arg("g") = 0.015, py::arg("g12") = 0.007, py::arg("e_c") = 0.15,
      py::arg("e_j0") = 28.75, py::arg("d") = 0.385,
      py::arg("n_res_levels") = 3,
      "resonator-qubit-resonator Hamiltonian as a complex matrix");

  m.def(
      "run_point",
      [](const std::string& config_path, double phi,
         const std::string& method) {
        const qhv::SweepConfig cfg = load_for_python(config_path, method, 0, 0);
        return record_to_dict(qhv::solve_point(cfg, phi, cfg.method).record);
      },
      py::arg("config_path"), py::arg("phi"), py::arg("method") = "",
      "solve one flux point of a configuration and return its record");

  m.def(
      "run_sweep",
      [](const std::string& config_path, const std::string& method, int points,
         int parallel) {
        const qhv::SweepConfig cfg =
            load_for_python(config_path, method, points, parallel);
        py::list out;
        for (const auto& r : qhv::run_sweep(cfg)) out.append(record_to_dict(r));
        return out;
      },
      py::arg("config_path"), py::arg("method") = "", py::arg("points") = 0,
      py::arg("parallel") = 0,
      "run the flux sweep of a configuration and return one record per point");
}
