#include "qhv/steady_state.hpp"

#include <cmath>

namespace qhv {

Vec vec_column_stacked(const Mat& rho) {
  // Column j of rho occupies entries [j*d, (j+1)*d); Eigen is column-major,
  // so this is a flat copy.
  return Eigen::Map<const Vec>(rho.data(), rho.size());
}

Mat unvec_column_stacked(const Vec& v, int d) {
  if (v.size() != Eigen::Index(d) * d)
    throw ConsistencyError("vector length is not a squared dimension");
  return Eigen::Map<const Mat>(v.data(), d, d);
}

StateDiagnostics validate_state(const Mat& rho, double pos_tol) {
  StateDiagnostics diag;
  diag.hermiticity_defect = frobenius(rho - Mat(rho.adjoint()));
  diag.trace_defect = std::abs(rho.trace() - cplx(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + Mat(rho.adjoint())));
  diag.min_eigenvalue = es.eigenvalues().minCoeff();
  if (diag.hermiticity_defect > 1e-12 || diag.trace_defect > 1e-12)
    diag.grade = StateGrade::Fail;
  else if (diag.min_eigenvalue < -pos_tol)
    diag.grade = StateGrade::Warn;
  return diag;
}

namespace {

// Rank of the numerical kernel, for the failure report on a singular solve.
int kernel_dimension(const Mat& l) {
  Eigen::BDCSVD<Mat> svd(l);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = 1e-10 * sv(0);
  int dim = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= cut) ++dim;
  return dim;
}

}  // namespace

DensityMatrix solve_steady_state(const Superoperator& l, double solver_tol,
                                 double pos_tol) {
  const int d = l.dim;
  const Eigen::Index dd = l.matrix.rows();
  if (dd != Eigen::Index(d) * d || l.matrix.cols() != dd)
    throw ConsistencyError("superoperator shape is not d^2 x d^2");

  // Replace the least informative equation (smallest |diagonal|) by the
  // trace constraint sum_i v[i*d+i] = 1.
  Eigen::Index row = 0;
  double best = std::abs(l.matrix(0, 0));
  for (Eigen::Index k = 1; k < dd; ++k) {
    const double m = std::abs(l.matrix(k, k));
    if (m < best) {
      best = m;
      row = k;
    }
  }
  Mat m = l.matrix;
  m.row(row).setZero();
  for (int i = 0; i < d; ++i) m(row, Eigen::Index(i) * d + i) = 1.0;
  Vec rhs = Vec::Zero(dd);
  rhs(row) = 1.0;

  Eigen::PartialPivLU<Mat> lu(m);

  // A kernel dimension above one leaves the trace-replaced matrix singular,
  // which shows up as a collapsed pivot. Healthy generators sit many orders
  // above this threshold (worst observed ~1e-5 relative).
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs().eval();
  const double pivot_max = pivots.maxCoeff();
  if (pivot_max <= 0.0 || pivots.minCoeff() <= 1e-13 * pivot_max) {
    const int kdim = kernel_dimension(l.matrix);
    throw DegenerateKernelError(
        "steady state is not unique; kernel dimension " +
            std::to_string(kdim),
        kdim);
  }

  Vec x = lu.solve(rhs);
  x -= lu.solve(m * x - rhs);  // one refinement pass

  const double scale_l = frobenius(l.matrix);
  if (!x.allFinite()) {
    const int kdim = kernel_dimension(l.matrix);
    throw DegenerateKernelError(
        "steady state is not unique (singular solve); kernel dimension " +
            std::to_string(kdim),
        kdim);
  }

  Mat rho = unvec_column_stacked(x, d);
  rho = 0.5 * (rho + Mat(rho.adjoint()));
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-14) {
    const int kdim = kernel_dimension(l.matrix);
    throw DegenerateKernelError(
        "steady-state solve returned a traceless matrix; kernel dimension " +
            std::to_string(kdim),
        kdim);
  }
  rho /= tr;

  DensityMatrix out;
  out.residual = (l.matrix * vec_column_stacked(rho)).norm();
  if (out.residual > solver_tol * std::max(scale_l, 1.0)) {
    const int kdim = kernel_dimension(l.matrix);
    if (kdim != 1)
      throw DegenerateKernelError(
          "steady state is not unique; kernel dimension " +
              std::to_string(kdim),
          kdim);
    throw NumericalAccuracyError(
        "steady-state residual " + std::to_string(out.residual) +
        " exceeds tolerance");
  }
  out.matrix = std::move(rho);
  out.diagnostics = validate_state(out.matrix, pos_tol);
  return out;
}

DensityMatrix evolve_ode(const Superoperator& l, const Mat& rho0,
                         double t_final, double dt, double pos_tol) {
  const int d = l.dim;
  if (rho0.rows() != d || rho0.cols() != d)
    throw ConsistencyError("initial state dimension mismatch");
  if (t_final < 0.0) throw DomainError("t_final must be nonnegative");
  if (dt <= 0.0) throw DomainError("dt must be positive");

  const double norm_inf = l.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm_inf > 0.0 && dt >= 0.1 / norm_inf)
    throw StabilityError("integrator step exceeds 0.1/||L||_inf");

  DensityMatrix out;
  if (t_final == 0.0) {
    out.matrix = rho0;
    out.residual = (l.matrix * vec_column_stacked(rho0)).norm();
    out.diagnostics = validate_state(rho0, pos_tol);
    return out;
  }

  const long steps = static_cast<long>(std::ceil(t_final / dt));
  const double h = t_final / double(steps);
  const double trace0 = rho0.trace().real();

  Vec v = vec_column_stacked(rho0);
  Vec k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
  for (long s = 0; s < steps; ++s) {
    k1.noalias() = l.matrix * v;
    k2.noalias() = l.matrix * (v + 0.5 * h * k1);
    k3.noalias() = l.matrix * (v + 0.5 * h * k2);
    k4.noalias() = l.matrix * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Mat rho = unvec_column_stacked(v, d);
  if (std::abs(rho.trace().real() - trace0) > 1e-9)
    throw NumericalAccuracyError("integrator failed to preserve the trace");
  out.matrix = std::move(rho);
  out.residual = (l.matrix * v).norm();
  out.diagnostics = validate_state(out.matrix, pos_tol);
  return out;
}

double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(
      0.5 * ((a - b) + Mat((a - b).adjoint())));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qhv
