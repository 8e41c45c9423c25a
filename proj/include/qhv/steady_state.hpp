#pragma once

#include "qhv/generators.hpp"

namespace qhv {

enum class StateGrade { Pass, Warn, Fail };

struct StateDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  StateGrade grade = StateGrade::Pass;
};

struct DensityMatrix {
  Mat matrix;
  StateDiagnostics diagnostics;
  double residual = 0.0;  // ||L vec(rho)||_2 of the returned state
};

// Linear solve of L v = 0 with the row of smallest |diagonal| replaced by
// the trace constraint, one iterative-refinement pass, then hermitization
// and trace normalization. DegenerateKernelError (with the numerical kernel
// dimension) when L has more than one null direction.
DensityMatrix solve_steady_state(const Superoperator& l,
                                 double solver_tol = 1e-10,
                                 double pos_tol = 1e-8);

// Fixed-step classic Runge-Kutta on vec(rho). Requires
// dt < 0.1 / ||L||_inf (StabilityError otherwise); the step actually used
// divides t_final evenly and never exceeds dt.
DensityMatrix evolve_ode(const Superoperator& l, const Mat& rho0,
                         double t_final, double dt, double pos_tol = 1e-8);

StateDiagnostics validate_state(const Mat& rho, double pos_tol = 1e-8);

double trace_distance(const Mat& a, const Mat& b);

Vec vec_column_stacked(const Mat& rho);
Mat unvec_column_stacked(const Vec& v, int d);

}  // namespace qhv
