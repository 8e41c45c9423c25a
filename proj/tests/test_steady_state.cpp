#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qhv/errors.hpp"
#include "qhv/steady_state.hpp"

using namespace qhv;

namespace {

constexpr double kTHot = 1.2081018587246581;

std::vector<BathSpec> standard_baths() {
  BathSpec left;
  left.side = BathSide::L;
  left.model = SpectralModel::ohmic(1.0, 50.0);
  left.temperature = kTHot;
  left.alpha = 0.04;
  BathSpec right = left;
  right.side = BathSide::R;
  right.temperature = 0.3922408632222916;
  return {left, right};
}

// single dissipative qubit, assembled from first principles
Superoperator qubit_liouvillian(double splitting, double temperature,
                                double alpha) {
  Mat h = Mat::Zero(2, 2);
  h(1, 1) = splitting;
  const EigenBasis eb = eigendecompose_hermitian(h);
  Mat sx(2, 2);
  sx << cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0);
  const auto terms = bohr_decompose(eb, sx, 1e-9);

  BathSpec b;
  b.model = SpectralModel::ohmic(1.0, 50.0);
  b.temperature = temperature;
  b.alpha = alpha;
  std::vector<double> omegas;
  for (const auto& t : terms) omegas.push_back(t.omega);
  const BathResponse resp = build_bath_response(b, omegas);
  PairSet diag;
  for (int k = 0; k < static_cast<int>(terms.size()); ++k)
    diag.pairs.emplace_back(k, k);

  const Superoperator d = build_dissipator(b, terms, diag, resp);
  Superoperator l = commutator_superop(Mat(eb.energies.asDiagonal()));
  l.matrix += d.matrix;
  return l;
}

}  // namespace

TEST_CASE("column stacking layout") {
  Mat rho(2, 2);
  rho << cplx(1, 0), cplx(2, 3), cplx(2, -3), cplx(4, 0);
  const Vec v = vec_column_stacked(rho);
  REQUIRE(v.size() == 4);
  // v[j*d + i] = rho(i, j)
  CHECK(v(0) == rho(0, 0));
  CHECK(v(1) == rho(1, 0));
  CHECK(v(2) == rho(0, 1));
  CHECK(v(3) == rho(1, 1));
  CHECK(frobenius(unvec_column_stacked(v, 2) - rho) == 0.0);
}

TEST_CASE("dissipative qubit thermalizes to the Gibbs ratio") {
  const double w = 1.2;
  const Superoperator l = qubit_liouvillian(w, kTHot, 0.1);
  const DensityMatrix rho = solve_steady_state(l);

  CHECK(rho.diagnostics.grade != StateGrade::Fail);
  CHECK(std::abs(rho.matrix.trace() - cplx(1, 0)) < 1e-14);
  // coherences vanish, populations are Boltzmann distributed
  CHECK(std::abs(rho.matrix(0, 1)) < 1e-14);
  const double ratio = rho.matrix(1, 1).real() / rho.matrix(0, 0).real();
  CHECK(ratio == doctest::Approx(std::exp(-w / kTHot)).epsilon(1e-12));

  // reported residual is the actual generator residual
  const double recomputed = (l.matrix * vec_column_stacked(rho.matrix)).norm();
  CHECK(rho.residual == doctest::Approx(recomputed).epsilon(1e-12));
}

TEST_CASE("steady state of the full chain is a valid state") {
  const CircuitParams c;  // 3-level resonators
  const CompositeSpace space = resonator_qubit_resonator_space(3);
  const Mat h = build_system_hamiltonian(c, 0.25);
  const GeneratorBundle g = build_generator(
      h, space, standard_baths(), GeneratorMethod::full_secular());
  const DensityMatrix rho = solve_steady_state(g.liouvillian);

  CHECK(rho.diagnostics.grade == StateGrade::Pass);
  CHECK(rho.diagnostics.trace_defect < 1e-14);
  CHECK(rho.diagnostics.hermiticity_defect < 1e-14);
  // a frequency-diagonal generator keeps the state essentially positive
  CHECK(rho.diagnostics.min_eigenvalue >= -1e-12);
  CHECK(rho.residual <= 1e-10 * frobenius(g.liouvillian.matrix));
}

TEST_CASE("steady state is a fixed point of the time evolution") {
  const Superoperator l = qubit_liouvillian(1.2, kTHot, 0.1);
  const DensityMatrix rho = solve_steady_state(l);
  const double dt = 0.05 / l.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  const DensityMatrix after = evolve_ode(l, rho.matrix, 100.0 * dt, dt);
  CHECK(trace_distance(after.matrix, rho.matrix) <= 1e-10);
}

TEST_CASE("time evolution relaxes an excited qubit to the steady state") {
  const Superoperator l = qubit_liouvillian(1.2, kTHot, 0.1);
  const DensityMatrix target = solve_steady_state(l);

  Mat excited = Mat::Zero(2, 2);
  excited(1, 1) = 1.0;
  // alpha^2 * gamma sets the relaxation rate; evolve for many lifetimes
  const double t_final = 2000.0;
  const double dt = 0.05 / l.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  const DensityMatrix relaxed = evolve_ode(l, excited, t_final, dt);
  CHECK(trace_distance(relaxed.matrix, target.matrix) <= 1e-8);
  CHECK(std::abs(relaxed.matrix.trace() - cplx(1, 0)) <= 1e-9);
}

TEST_CASE("time evolution guards") {
  const Superoperator l = qubit_liouvillian(1.2, kTHot, 0.1);
  Mat rho0 = Mat::Zero(2, 2);
  rho0(0, 0) = 1.0;

  // zero evolution returns the input unchanged
  const DensityMatrix same = evolve_ode(l, rho0, 0.0, 1e-3);
  CHECK(frobenius(same.matrix - rho0) == 0.0);

  // step-size stability gate
  const double limit = 0.1 / l.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  CHECK_THROWS_AS(evolve_ode(l, rho0, 1.0, 2.0 * limit), StabilityError);
}

TEST_CASE("decoupled baths leave a degenerate kernel") {
  const CircuitParams c{1.0, 1.0, 0.015, 0.007, {}, 2};
  const CompositeSpace space = resonator_qubit_resonator_space(2);
  const Mat h = build_system_hamiltonian(c, 0.25);
  auto baths = standard_baths();
  baths[0].alpha = 0.0;
  baths[1].alpha = 0.0;
  const GeneratorBundle g =
      build_generator(h, space, baths, GeneratorMethod::full_secular());

  try {
    solve_steady_state(g.liouvillian);
    FAIL("expected DegenerateKernelError");
  } catch (const DegenerateKernelError& e) {
    // pure commutator with a nondegenerate spectrum: every eigenprojector
    // is stationary
    CHECK(e.kernel_dim == 8);
  }
}

TEST_CASE("the zero generator reports its full kernel") {
  Superoperator l;
  l.matrix = Mat::Zero(16, 16);
  l.dim = 4;
  try {
    solve_steady_state(l);
    FAIL("expected DegenerateKernelError");
  } catch (const DegenerateKernelError& e) {
    CHECK(e.kernel_dim == 16);
  }
}

TEST_CASE("state validation grading") {
  Mat good = Mat::Zero(2, 2);
  good(0, 0) = 0.75;
  good(1, 1) = 0.25;
  CHECK(validate_state(good).grade == StateGrade::Pass);

  // slightly negative eigenvalue beyond the tolerance: warn, not fail
  Mat warn = Mat::Zero(2, 2);
  warn(0, 0) = 1.0 + 2e-8;
  warn(1, 1) = -2e-8;
  const StateDiagnostics wd = validate_state(warn, 1e-8);
  CHECK(wd.grade == StateGrade::Warn);
  CHECK(wd.min_eigenvalue == doctest::Approx(-2e-8).epsilon(1e-6));

  // broken trace: fail
  Mat bad_trace = Mat::Zero(2, 2);
  bad_trace(0, 0) = 0.7;
  bad_trace(1, 1) = 0.7;
  CHECK(validate_state(bad_trace).grade == StateGrade::Fail);

  // broken hermiticity: fail
  Mat bad_herm = Mat::Zero(2, 2);
  bad_herm(0, 0) = 0.5;
  bad_herm(1, 1) = 0.5;
  bad_herm(0, 1) = cplx(0.0, 1e-3);
  CHECK(validate_state(bad_herm).grade == StateGrade::Fail);
}

TEST_CASE("trace distance") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  Mat b = Mat::Zero(2, 2);
  b(1, 1) = 1.0;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(a, a) == 0.0);
  // symmetric in its arguments
  Mat c = Mat::Zero(2, 2);
  c(0, 0) = 0.5;
  c(1, 1) = 0.5;
  CHECK(trace_distance(a, c) ==
        doctest::Approx(trace_distance(c, a)).epsilon(1e-14));
}
