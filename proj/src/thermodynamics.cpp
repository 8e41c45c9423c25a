#include "qhv/thermodynamics.hpp"

#include <cmath>

#include "qhv/constants.hpp"

namespace qhv {

GoldenRuleRates build_golden_rule_rates(const RVec& energies,
                                        const std::vector<BohrTerm>& terms,
                                        const BathResponse& response,
                                        double alpha) {
  if (response.gamma.size() != terms.size())
    throw ConsistencyError("bath response does not cover every Bohr term");
  const int d = static_cast<int>(energies.size());
  GoldenRuleRates out;
  out.energies = energies;
  out.rates = Eigen::MatrixXd::Zero(d, d);
  for (size_t t = 0; t < terms.size(); ++t) {
    const Mat& op = terms[t].op;
    if (op.rows() != d)
      throw ConsistencyError("Bohr term dimension does not match the basis");
    // Every nonzero (i, j) of this term has gap e_j - e_i ~ terms[t].omega,
    // the frequency gamma was evaluated at.
    const double g = response.gamma[t];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double m = std::norm(op(i, j));
        if (m > 0.0) out.rates(i, j) += alpha * alpha * g * m;
      }
  }
  return out;
}

double heat_flow_trace(const Mat& h_s, const Superoperator& d_b,
                       const Mat& rho) {
  if (h_s.rows() != d_b.dim || rho.rows() != d_b.dim)
    throw ConsistencyError("dimension mismatch between H, dissipator and rho");
  const Mat drho =
      unvec_column_stacked(d_b.matrix * vec_column_stacked(rho), d_b.dim);
  const cplx p = (h_s * drho).trace();
  const double scale =
      std::max(frobenius(h_s) * frobenius(drho), 1e-300);
  if (std::abs(p.imag()) > 1e-12 * scale)
    throw ConsistencyError("heat flow has a non-negligible imaginary part");
  return p.real();
}

double heat_flow_golden_rule(const GoldenRuleRates& rates, const Mat& rho) {
  const int d = static_cast<int>(rates.energies.size());
  if (rho.rows() != d || rho.cols() != d)
    throw ConsistencyError("state dimension does not match the rate matrix");
  double p = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      p += rates.rates(i, j) * rho(j, j).real() *
           (rates.energies(i) - rates.energies(j));
  return p;
}

double to_si_power(double p_natural, double omega_l_si) {
  if (omega_l_si <= 0.0)
    throw DomainError("SI conversion needs a positive angular frequency");
  return hbar * omega_l_si * omega_l_si * p_natural;
}

}  // namespace qhv
