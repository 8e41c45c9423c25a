#include "qhv/bath_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

namespace qhv {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SpectralModel SpectralModel::ohmic(double chi, double omega_c) {
  SpectralModel m;
  m.kind = Kind::Ohmic;
  m.chi = chi;
  m.omega_c = omega_c;
  m.validate();
  return m;
}

SpectralModel SpectralModel::lorentzian(double chi, double q, double omega_r) {
  SpectralModel m;
  m.kind = Kind::LorentzianBandPass;
  m.chi = chi;
  m.q_factor = q;
  m.omega_r = omega_r;
  m.validate();
  return m;
}

void SpectralModel::validate() const {
  if (chi <= 0.0) throw DomainError("spectral coupling chi must be positive");
  if (kind == Kind::Ohmic) {
    if (omega_c <= 0.0) throw DomainError("ohmic cutoff must be positive");
  } else {
    if (q_factor <= 0.0 || omega_r <= 0.0)
      throw DomainError("lorentzian Q and peak frequency must be positive");
  }
}

double SpectralModel::scale() const {
  return kind == Kind::Ohmic ? omega_c : omega_r;
}

void BathSpec::validate() const {
  model.validate();
  if (temperature <= 0.0) throw DomainError("bath temperature must be positive");
  if (alpha < 0.0 || alpha >= 1.0)
    throw DomainError("bath coupling alpha must lie in [0, 1)");
  if (alpha > 0.1)
    std::cerr << "warning: alpha = " << alpha
              << " strains the weak-coupling assumption\n";
}

double spectral_density(const SpectralModel& m, double omega) {
  if (omega < 0.0)
    throw DomainError("spectral density is defined for omega >= 0");
  if (omega == 0.0) return 0.0;
  if (m.kind == SpectralModel::Kind::Ohmic)
    return m.chi * omega / (1.0 + omega * omega / (m.omega_c * m.omega_c));
  const double x = omega / m.omega_r - m.omega_r / omega;
  return m.chi * omega / (1.0 + m.q_factor * m.q_factor * x * x);
}

double bose_occupancy(double omega, double temperature) {
  if (omega <= 0.0 || temperature <= 0.0)
    throw DomainError("bose occupancy needs omega > 0 and T > 0");
  return 1.0 / std::expm1(omega / temperature);
}

double rate_gamma(const BathSpec& b, double omega) {
  const double t = b.temperature;
  if (omega == 0.0) {
    if (b.model.kind == SpectralModel::Kind::Ohmic)
      return two_pi * b.model.chi * t;
    return 0.0;
  }
  if (omega > 0.0) {
    // n+1 = 1/(1 - exp(-w/T)), stable for both small and large w/T
    const double stim = 1.0 / (-std::expm1(-omega / t));
    return two_pi * spectral_density(b.model, omega) * stim;
  }
  const double w = -omega;
  const double occ = 1.0 / std::expm1(w / t);
  return two_pi * spectral_density(b.model, w) * occ;
}

/*
 * Adaptive Gauss-Kronrod 15(7). Segment with the largest error estimate is
 * bisected until the summed estimate drops below tol. The (K15 - G7)
 * difference is used directly as the per-segment estimate; conservative for
 * the smooth integrands this library produces.
 */
double integrate_gk15(const std::function<double(double)>& f, double a,
                      double b, double tol, int max_segments) {
  static const double xk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.000000000000000};
  static const double wk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static const double wg[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469};

  struct Segment {
    double a, b, value, error;
  };
  auto eval = [&f](double lo, double hi) -> Segment {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double fc = f(c);
    double k = wk[7] * fc;
    double g = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
      const double f1 = f(c - h * xk[i]);
      const double f2 = f(c + h * xk[i]);
      k += wk[i] * (f1 + f2);
      if (i % 2 == 1) g += wg[i / 2] * (f1 + f2);
    }
    return {lo, hi, k * h, std::abs(k - g) * h};
  };

  if (a == b) return 0.0;
  std::vector<Segment> segs{eval(a, b)};
  while (true) {
    double total_err = 0.0, total_val = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].error;
      total_val += segs[i].value;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (total_err <= tol) return total_val;
    if (static_cast<int>(segs.size()) >= max_segments)
      throw NumericalAccuracyError(
          "quadrature failed to converge to the requested tolerance");
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = eval(s.a, mid);
    segs.push_back(eval(mid, s.b));
  }
}

/*
 * Principal value via subtraction: with gw = gamma(w),
 *   PV int gamma(x)/(w-x) dx
 *     = int (gamma(x)-gw)/(w-x) dx + gw * ln((W+w)/(W-w)),
 * where the remaining integrand is finite at x = w and the excised
 * strip [w-delta, w+delta] contributes O(delta) from the smooth part.
 */
double lamb_shift_S(const BathSpec& b, double omega, double quad_tol) {
  if (!b.lamb_shift_enabled) return 0.0;
  const double scale = std::max(b.model.scale(), std::abs(omega));
  const double w_window = 20.0 * scale;
  const double delta = 1e-6 * scale;
  const double gw = rate_gamma(b, omega);
  auto f = [&](double x) { return (rate_gamma(b, x) - gw) / (omega - x); };
  const double left = integrate_gk15(f, -w_window, omega - delta, quad_tol);
  const double right = integrate_gk15(f, omega + delta, w_window, quad_tol);
  const double log_term =
      gw * std::log((w_window + omega) / (w_window - omega));
  return (left + right + log_term) / two_pi;
}

BathResponse build_bath_response(const BathSpec& b,
                                 const std::vector<double>& omegas,
                                 double quad_tol) {
  BathResponse r;
  r.gamma.reserve(omegas.size());
  r.s_shift.reserve(omegas.size());
  for (double w : omegas) {
    r.gamma.push_back(rate_gamma(b, w));
    r.s_shift.push_back(lamb_shift_S(b, w, quad_tol));
  }
  return r;
}

}  // namespace qhv
