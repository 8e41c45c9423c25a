#pragma once

#include <functional>
#include <vector>

#include "qhv/circuit_model.hpp"

namespace qhv {

// J(omega) for omega >= 0. Ohmic: chi*w/(1+w^2/wc^2).
// Lorentzian band-pass: chi*w/(1+Q^2 (w/wr - wr/w)^2), 0 at w = 0.
struct SpectralModel {
  enum class Kind { Ohmic, LorentzianBandPass };
  Kind kind = Kind::Ohmic;
  double chi = 1.0;
  double omega_c = 50.0;  // ohmic cutoff
  double q_factor = 20.0; // lorentzian width
  double omega_r = 1.0;   // lorentzian peak

  static SpectralModel ohmic(double chi, double omega_c);
  static SpectralModel lorentzian(double chi, double q, double omega_r);
  void validate() const;
  // Frequency scale of the model (cutoff or peak), used for quadrature windows.
  double scale() const;
};

struct BathSpec {
  BathSide side = BathSide::L;
  SpectralModel model;
  double temperature = 1.0;  // k_B T in units of Omega_L
  double alpha = 0.04;       // dimensionless coupling; squared once in assembly
  bool lamb_shift_enabled = false;

  void validate() const;
};

double spectral_density(const SpectralModel& m, double omega);

double bose_occupancy(double omega, double temperature);

// gamma(w) = 2 pi J(w) (n(w)+1) for w > 0, 2 pi J(|w|) n(|w|) for w < 0,
// continuous limit at w = 0 (ohmic: 2 pi chi T, lorentzian: 0).
// The alpha^2 prefactor is NOT applied here.
double rate_gamma(const BathSpec& b, double omega);

// S(w) = (1/2pi) PV int_{-W}^{W} gamma(x)/(w-x) dx with W = 20*max(scale,|w|)
// and symmetric excision of half-width 1e-6*scale around x = w.
// Returns 0 when the bath's Lamb shift is disabled.
double lamb_shift_S(const BathSpec& b, double omega, double quad_tol = 1e-8);

// Half-Fourier response at each frequency: Gamma(w) = gamma(w)/2 + i S(w).
struct BathResponse {
  std::vector<double> gamma;    // 2 Re Gamma
  std::vector<double> s_shift;  // Im Gamma
  cplx response(size_t idx) const {
    return cplx(0.5 * gamma[idx], s_shift[idx]);
  }
};

BathResponse build_bath_response(const BathSpec& b,
                                 const std::vector<double>& omegas,
                                 double quad_tol = 1e-8);

// Adaptive Gauss-Kronrod 15(7) on [a, b]; NumericalAccuracyError if the
// error estimate cannot be brought below tol.
double integrate_gk15(const std::function<double(double)>& f, double a,
                      double b, double tol, int max_segments = 4000);

}  // namespace qhv
