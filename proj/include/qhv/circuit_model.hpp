#pragma once

#include "qhv/operator_algebra.hpp"

namespace qhv {

// Split-junction transmon, energies in units of the left resonator frequency.
struct TransmonParams {
  double e_c = 0.15;
  double e_j0 = 28.75;
  double d_asym = 0.385;

  void validate() const;  // throws DomainError; transmon-regime check warns only
};

struct CircuitParams {
  double omega_l = 1.0;
  double omega_r = 1.0;
  double g = 0.015;
  double g12 = 0.007;  // signed; sign is a fit parameter, not constrained
  TransmonParams transmon;
  int n_res_levels = 3;

  void validate() const;
};

enum class BathSide { L, R };

CompositeSpace resonator_qubit_resonator_space(int n_res_levels);

// omega_q(phi) = sqrt(8 E_J(phi) E_C) - E_C with
// E_J(phi) = E_J0 * sqrt(cos^2(pi phi) + d^2 sin^2(pi phi)),
// the form that stays finite at half-integer flux.
double transmon_frequency(double phi, const TransmonParams& p);

// Number-conserving chain Hamiltonian:
// Omega_L aL+aL + Omega_R aR+aR + omega_q s+s-
//   + g (aL s+ + aL+ s- + aR s+ + aR+ s-) + g12 (aL aR+ + aL+ aR).
Mat build_system_hamiltonian(const CircuitParams& c, double phi);

// Hermitian quadrature i(a_side^+ - a_side) on the composite space.
Mat bath_coupling_operator(BathSide side, const CompositeSpace& space);

}  // namespace qhv
