#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qhv/circuit_model.hpp"
#include "qhv/errors.hpp"

using namespace qhv;

namespace {

const TransmonParams kDefaultTransmon{};  // E_C=0.15, E_J0=28.75, d=0.385

Mat total_excitation_number(const CircuitParams& c) {
  const CompositeSpace s = resonator_qubit_resonator_space(c.n_res_levels);
  const Mat a = annihilation(c.n_res_levels);
  const Mat n_res = a.adjoint() * a;
  Mat n_q = Mat::Zero(2, 2);
  n_q(1, 1) = 1.0;
  return tensor_embed(n_res, 0, s) + tensor_embed(n_q, 1, s) +
         tensor_embed(n_res, 2, s);
}

}  // namespace

TEST_CASE("qubit frequency at the sweet spot and at half flux") {
  // frozen values for E_C=0.15, E_J0=28.75, d=0.385
  CHECK(transmon_frequency(0.0, kDefaultTransmon) ==
        doctest::Approx(5.723670062235365).epsilon(1e-13));
  CHECK(transmon_frequency(0.5, kDefaultTransmon) ==
        doctest::Approx(3.4945164288283843).epsilon(1e-13));
  CHECK(transmon_frequency(0.25, kDefaultTransmon) ==
        doctest::Approx(4.962799925638864).epsilon(1e-13));
  // four-digit reference points
  CHECK(transmon_frequency(0.0, kDefaultTransmon) ==
        doctest::Approx(5.7237).epsilon(5e-5));
  CHECK(transmon_frequency(0.5, kDefaultTransmon) ==
        doctest::Approx(3.4946).epsilon(5e-5));
}

TEST_CASE("qubit frequency symmetries") {
  for (double x : {0.02, 0.11, 0.23, 0.37, 0.49}) {
    // one flux quantum period
    CHECK(transmon_frequency(x, kDefaultTransmon) ==
          doctest::Approx(transmon_frequency(x + 1.0, kDefaultTransmon))
              .epsilon(1e-12));
    // mirror symmetry about half flux
    CHECK(transmon_frequency(0.5 - x, kDefaultTransmon) ==
          doctest::Approx(transmon_frequency(0.5 + x, kDefaultTransmon))
              .epsilon(1e-12));
  }
  // monotone decreasing on [0, 1/2]
  double prev = transmon_frequency(0.0, kDefaultTransmon);
  for (int k = 1; k <= 20; ++k) {
    const double cur = transmon_frequency(0.5 * k / 20.0, kDefaultTransmon);
    CHECK(cur < prev);
    prev = cur;
  }
  // finite and smooth at half flux thanks to the junction asymmetry
  CHECK(std::isfinite(transmon_frequency(0.5, kDefaultTransmon)));
  CHECK(transmon_frequency(0.5, kDefaultTransmon) > 0.0);
}

TEST_CASE("parameter validation") {
  TransmonParams t = kDefaultTransmon;
  t.e_c = -0.1;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = kDefaultTransmon;
  t.d_asym = 1.5;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = kDefaultTransmon;
  t.e_j0 = 0.0;
  CHECK_THROWS_AS(t.validate(), DomainError);
  // low E_J/E_C ratio warns but does not throw
  t = kDefaultTransmon;
  t.e_j0 = 0.6;
  CHECK_NOTHROW(t.validate());

  CircuitParams c;
  c.omega_l = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = CircuitParams{};
  c.n_res_levels = 1;
  CHECK_THROWS_AS(c.validate(), InvalidDimensionError);
}

TEST_CASE("Hamiltonian structure") {
  CircuitParams c;  // defaults: 3-level resonators
  const Mat h = build_system_hamiltonian(c, 0.25);
  REQUIRE(h.rows() == 18);

  CHECK(frobenius(h - h.adjoint()) == 0.0);

  // conserves the total excitation number
  const Mat n = total_excitation_number(c);
  CHECK(frobenius(h * n - n * h) <= 1e-12 * frobenius(h));

  // vacuum is an exact zero-energy eigenstate
  Vec vac = Vec::Zero(18);
  vac(0) = 1.0;
  CHECK((h * vac).norm() == 0.0);
}

TEST_CASE("single-excitation spectrum at triple resonance") {
  // choose E_J0 so the qubit sits exactly at the resonator frequency:
  // sqrt(8 E_J 0.15) - 0.15 = 1  =>  E_J0 = 1.3225 / 1.2
  CircuitParams c;
  c.g = 0.05;
  c.g12 = 0.0;
  c.transmon.e_j0 = 1.3225 / 1.2;
  REQUIRE(transmon_frequency(0.0, c.transmon) ==
          doctest::Approx(1.0).epsilon(1e-14));

  const Mat h = build_system_hamiltonian(c, 0.0);
  const EigenBasis eb = eigendecompose_hermitian(h);

  // the one-excitation block of two degenerate resonators and a resonant
  // qubit splits into {1 - sqrt(2) g, 1, 1 + sqrt(2) g}
  const double split = std::sqrt(2.0) * c.g;
  for (double target : {1.0 - split, 1.0, 1.0 + split}) {
    double best = 1e300;
    for (int k = 0; k < eb.energies.size(); ++k)
      best = std::min(best, std::abs(eb.energies(k) - target));
    CHECK(best <= 1e-12);
  }
}

TEST_CASE("resonator exchange term mixes the two resonators") {
  // with g = 0 the qubit decouples; the g12 swap splits the degenerate
  // single-photon doublet by exactly 2 |g12|
  CircuitParams c;
  c.g = 0.0;
  c.g12 = 0.02;
  const Mat h = build_system_hamiltonian(c, 0.25);
  const EigenBasis eb = eigendecompose_hermitian(h);
  for (double target : {1.0 - c.g12, 1.0 + c.g12}) {
    double best = 1e300;
    for (int k = 0; k < eb.energies.size(); ++k)
      best = std::min(best, std::abs(eb.energies(k) - target));
    CHECK(best <= 1e-12);
  }
}

TEST_CASE("bath coupling operator is the resonator quadrature") {
  const CompositeSpace s = resonator_qubit_resonator_space(3);
  const Mat a = annihilation(3);
  const Mat quad = cplx(0.0, 1.0) * (a.adjoint() - a);

  const Mat left = bath_coupling_operator(BathSide::L, s);
  const Mat right = bath_coupling_operator(BathSide::R, s);

  CHECK(frobenius(left - tensor_embed(quad, 0, s)) == 0.0);
  CHECK(frobenius(right - tensor_embed(quad, 2, s)) == 0.0);
  CHECK(frobenius(left - left.adjoint()) == 0.0);
  // acts trivially on the qubit and the opposite resonator
  CHECK(frobenius(left * right - right * left) == 0.0);
}
