#pragma once

#include "qhv/steady_state.hpp"

namespace qhv {

// Population transition rates between energy eigenstates for one bath.
// rate(i, j) multiplies the occupation of j and feeds state i, so it is
// alpha^2 * gamma_b(e_j - e_i) * |<i|A_b|j>|^2 (emission when e_j > e_i,
// absorption otherwise).
struct GoldenRuleRates {
  Eigen::MatrixXd rates;
  RVec energies;
};

GoldenRuleRates build_golden_rule_rates(const RVec& energies,
                                        const std::vector<BohrTerm>& terms,
                                        const BathResponse& response,
                                        double alpha);

// P_b = Tr[H_S unvec(D_b vec(rho))], positive = energy flowing from bath b
// into the system. ConsistencyError if the trace has a non-negligible
// imaginary part.
double heat_flow_trace(const Mat& h_s, const Superoperator& d_b,
                       const Mat& rho);

// P = sum_{i,j} rate(i,j) * rho_jj * (e_i - e_j), diagonal of rho in the
// energy eigenbasis.
double heat_flow_golden_rule(const GoldenRuleRates& rates, const Mat& rho);

// P_SI = hbar * Omega_L^2 * p_natural for Omega_L in rad/s.
double to_si_power(double p_natural, double omega_l_si);

}  // namespace qhv
