#pragma once

namespace qhv {

// 2019 SI exact values.
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K
inline constexpr double h_planck = 6.62607015e-34;     // J s
inline constexpr double hbar = 1.054571817e-34;        // J s (h/2pi, CODATA rounding)

// Temperature in kelvin whose thermal energy equals one natural energy unit
// at angular frequency omega_si (rad/s): T = hbar*omega/k_B.
inline double natural_unit_kelvin(double omega_si) {
  return hbar * omega_si / k_boltzmann;
}

}  // namespace qhv
