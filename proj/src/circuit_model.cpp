#include "qhv/circuit_model.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace qhv {

void TransmonParams::validate() const {
  if (e_c <= 0.0) throw DomainError("transmon.E_C must be positive");
  if (e_j0 <= 0.0) throw DomainError("transmon.E_J0 must be positive");
  if (d_asym < 0.0 || d_asym > 1.0)
    throw DomainError("transmon.d must lie in [0, 1]");
  if (e_j0 / e_c < 10.0)
    std::cerr << "warning: E_J0/E_C = " << e_j0 / e_c
              << " is below the transmon regime\n";
}

void CircuitParams::validate() const {
  transmon.validate();
  if (omega_l <= 0.0 || omega_r <= 0.0)
    throw DomainError("resonator frequencies must be positive");
  if (n_res_levels < 2)
    throw InvalidDimensionError("resonators need at least 2 levels");
  const double wmin = std::min(omega_l, omega_r);
  if (std::abs(g) >= wmin || std::abs(g12) >= wmin)
    std::cerr << "warning: coupling comparable to a resonator frequency; "
                 "dispersive modelling assumptions may fail\n";
}

CompositeSpace resonator_qubit_resonator_space(int n_res_levels) {
  return CompositeSpace({n_res_levels, 2, n_res_levels}, {"L", "q", "R"});
}

double transmon_frequency(double phi, const TransmonParams& p) {
  const double c = std::cos(std::numbers::pi * phi);
  const double s = std::sin(std::numbers::pi * phi);
  const double ej = p.e_j0 * std::sqrt(c * c + p.d_asym * p.d_asym * s * s);
  return std::sqrt(8.0 * ej * p.e_c) - p.e_c;
}

Mat build_system_hamiltonian(const CircuitParams& c, double phi) {
  if (c.n_res_levels < 2)
    throw InvalidDimensionError("resonators need at least 2 levels");
  const CompositeSpace space = resonator_qubit_resonator_space(c.n_res_levels);
  const Mat a_l = tensor_embed(annihilation(c.n_res_levels), 0, space);
  const Mat s_m = tensor_embed(annihilation(2), 1, space);
  const Mat a_r = tensor_embed(annihilation(c.n_res_levels), 2, space);
  const Mat s_p = s_m.adjoint();
  const double omega_q = transmon_frequency(phi, c.transmon);

  Mat h = c.omega_l * (a_l.adjoint() * a_l) + c.omega_r * (a_r.adjoint() * a_r) +
          omega_q * (s_p * s_m) +
          c.g * (a_l * s_p + a_l.adjoint() * s_m + a_r * s_p + a_r.adjoint() * s_m) +
          c.g12 * (a_l * a_r.adjoint() + a_l.adjoint() * a_r);
  return h;
}

Mat bath_coupling_operator(BathSide side, const CompositeSpace& space) {
  const int slot = space.slot_of(side == BathSide::L ? "L" : "R");
  const Mat a = annihilation(space.dims[slot]);
  const Mat local = cplx(0.0, 1.0) * (a.adjoint() - a);
  return tensor_embed(local, slot, space);
}

}  // namespace qhv
