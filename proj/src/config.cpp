#include "qhv/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "qhv/constants.hpp"

namespace qhv {

double SweepConfig::omega_l_si() const {
  return 2.0 * std::numbers::pi * omega_l_ghz * 1e9;
}

double millikelvin_to_natural(double t_mk, double omega_l_ghz) {
  const double omega_si = 2.0 * std::numbers::pi * omega_l_ghz * 1e9;
  return (t_mk * 1e-3 * k_boltzmann) / (hbar * omega_si);
}

void SweepConfig::validate() const {
  circuit.validate();
  if (baths.size() != 2)
    throw ConfigError("exactly two baths (L and R) are required");
  for (const BathSpec& b : baths) b.validate();
  if (flux_points < 2) throw ConfigError("flux.points must be >= 2");
  if (!(flux_start < flux_stop))
    throw ConfigError("flux.start must be below flux.stop");
  if (tolerances.degeneracy <= 0.0 || tolerances.pos_tol <= 0.0 ||
      tolerances.solver <= 0.0 || tolerances.quadrature <= 0.0)
    throw ConfigError("all tolerances must be positive");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (omega_l_ghz <= 0.0)
    throw ConfigError("units.omega_L_GHz must be positive");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Key-value store that remembers insertion order so the first unknown key
// in file order is the one reported.
struct KvStore {
  std::vector<std::pair<std::string, std::string>> items;
  std::vector<bool> used;

  const std::string* find(const std::string& key) {
    for (size_t i = 0; i < items.size(); ++i)
      if (items[i].first == key) {
        used[i] = true;
        return &items[i].second;
      }
    return nullptr;
  }

  double number(const std::string& key, double fallback) {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
      size_t pos = 0;
      double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument(*v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': cannot parse number '" + *v + "'");
    }
  }

  double required_number(const std::string& key) {
    if (!find(key)) throw ConfigError("missing required key '" + key + "'");
    return number(key, 0.0);
  }

  int integer(const std::string& key, int fallback) {
    const double d = number(key, double(fallback));
    if (d != std::floor(d))
      throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(d);
  }

  bool flag(const std::string& key, bool fallback) {
    const std::string* v = find(key);
    if (!v) return fallback;
    if (*v == "on" || *v == "true") return true;
    if (*v == "off" || *v == "false") return false;
    throw ConfigError("key '" + key + "': expected on/off, got '" + *v + "'");
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const std::string* v = find(key);
    return v ? *v : fallback;
  }

  std::string required_text(const std::string& key) {
    const std::string* v = find(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  bool present(const std::string& key) const {
    for (const auto& [k, v] : items)
      if (k == key) return true;
    return false;
  }

  void reject_unused() const {
    for (size_t i = 0; i < items.size(); ++i)
      if (!used[i])
        throw ConfigError("unknown key '" + items[i].first + "'");
  }
};

KvStore tokenize(const std::string& text) {
  KvStore store;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value");
    for (const auto& [k, v] : store.items)
      if (k == key)
        throw ConfigError("duplicate key '" + key + "'");
    store.items.emplace_back(key, value);
  }
  store.used.assign(store.items.size(), false);
  return store;
}

BathSpec read_bath(KvStore& kv, const std::string& side, double omega_l_ghz) {
  const std::string prefix = "bath." + side + ".";
  BathSpec b;
  b.side = side == "L" ? BathSide::L : BathSide::R;

  const std::string model = kv.required_text(prefix + "model");
  const double chi = kv.number(prefix + "chi", 1.0);
  if (model == "ohmic") {
    if (kv.present(prefix + "Q") || kv.present(prefix + "omega_r"))
      throw ConfigError("key '" + prefix +
                        (kv.present(prefix + "Q") ? "Q" : "omega_r") +
                        "' does not apply to an ohmic bath");
    b.model = SpectralModel::ohmic(chi, kv.number(prefix + "omega_c", 50.0));
  } else if (model == "lorentzian") {
    if (kv.present(prefix + "omega_c"))
      throw ConfigError("key '" + prefix +
                        "omega_c' does not apply to a lorentzian bath");
    b.model = SpectralModel::lorentzian(chi, kv.number(prefix + "Q", 20.0),
                                        kv.number(prefix + "omega_r", 1.0));
  } else {
    throw ConfigError("key '" + prefix + "model': unknown model '" + model +
                      "' (expected ohmic or lorentzian)");
  }

  const double t_mk = kv.required_number(prefix + "temperature_mK");
  if (t_mk <= 0.0)
    throw ConfigError("key '" + prefix + "temperature_mK' must be positive");
  b.temperature = millikelvin_to_natural(t_mk, omega_l_ghz);
  b.alpha = kv.required_number(prefix + "alpha");
  if (b.alpha < 0.0 || b.alpha >= 1.0)
    throw ConfigError("key '" + prefix + "alpha' must lie in [0, 1)");
  b.lamb_shift_enabled = kv.flag(prefix + "lamb_shift", false);
  return b;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
  KvStore kv = tokenize(text);
  SweepConfig cfg;

  cfg.omega_l_ghz = kv.number("units.omega_L_GHz", 5.3122);
  if (cfg.omega_l_ghz <= 0.0)
    throw ConfigError("key 'units.omega_L_GHz' must be positive");

  cfg.circuit.omega_l = kv.number("circuit.omega_L", 1.0);
  cfg.circuit.omega_r = kv.number("circuit.omega_R", 1.0);
  cfg.circuit.g = kv.number("circuit.g", 0.015);
  cfg.circuit.g12 = kv.number("circuit.g12", 0.007);
  cfg.circuit.n_res_levels = kv.integer("circuit.n_res_levels", 3);
  cfg.circuit.transmon.e_c = kv.number("transmon.E_C", 0.15);
  cfg.circuit.transmon.e_j0 = kv.number("transmon.E_J0", 28.75);
  cfg.circuit.transmon.d_asym = kv.number("transmon.d", 0.385);

  cfg.baths.push_back(read_bath(kv, "L", cfg.omega_l_ghz));
  cfg.baths.push_back(read_bath(kv, "R", cfg.omega_l_ghz));

  cfg.method = GeneratorMethod::parse(kv.required_text("method"));

  cfg.flux_start = kv.number("flux.start", 0.0);
  cfg.flux_stop = kv.number("flux.stop", 1.0);
  cfg.flux_points = kv.integer("flux.points", 201);

  cfg.tolerances.degeneracy = kv.number("tolerances.degeneracy", 1e-9);
  cfg.tolerances.pos_tol = kv.number("tolerances.pos_tol", 1e-8);
  cfg.tolerances.solver = kv.number("tolerances.solver", 1e-10);
  cfg.tolerances.quadrature = kv.number("tolerances.quadrature", 1e-8);

  cfg.output_path = kv.text("output.path", "sweep.csv");
  cfg.parallelism = kv.integer("parallelism", 1);

  kv.reject_unused();
  try {
    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace qhv
