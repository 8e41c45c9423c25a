#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qhv/bath_spectra.hpp"

namespace qhv {

// One jump operator of the coupling operator's gap decomposition,
// expressed in the energy eigenbasis.
struct BohrTerm {
  double omega;
  Mat op;
};

// Retained (omega, omega') combinations, as indices into a BohrTerm list.
// Symmetric by construction: (a,b) present iff (b,a) present.
struct PairSet {
  std::vector<std::pair<int, int>> pairs;
  double tau_r = std::numeric_limits<double>::infinity();
};

struct GeneratorMethod {
  enum class Kind { Redfield, PartialSecular, FullSecular, Unified };
  Kind kind = Kind::PartialSecular;
  double c_psa = 100.0;
  bool delta_auto = true;
  double delta_cluster = 0.0;

  static GeneratorMethod redfield();
  static GeneratorMethod partial_secular(double c_psa);
  static GeneratorMethod full_secular();
  static GeneratorMethod unified_auto();
  static GeneratorMethod unified(double delta_cluster);
  // Accepts redfield | psa:C | full_secular | unified:auto | unified:DELTA.
  static GeneratorMethod parse(const std::string& text);
  std::string label() const;
};

// d^2 x d^2 matrix acting on column-stacked density matrices:
// vec(rho)[j*d+i] = rho(i,j).
struct Superoperator {
  Mat matrix;
  int dim = 0;
};

struct ToleranceSet {
  double degeneracy = 1e-9;
  double pos_tol = 1e-8;
  double solver = 1e-10;
  double quadrature = 1e-8;
};

// Gap decomposition of Hermitian A: gaps within tol_degeneracy merge into a
// single Bohr frequency (their mean); terms with negligible operator norm
// are dropped; result sorted by frequency.
std::vector<BohrTerm> bohr_decompose(const EigenBasis& basis, const Mat& a,
                                     double tol_degeneracy);

// Retention policy. PSA keeps |w - w'| <= C_PSA * alpha^2 * max|Gamma|,
// the multiplied-out form of C_PSA/|w-w'| >= tau_R with
// tau_R = alpha^-2 / max_w|Gamma(w)| over this bath's Bohr frequencies.
PairSet psa_filter(const std::vector<BohrTerm>& terms,
                   const GeneratorMethod& method, const BathResponse& response,
                   double alpha);

// Single-linkage grouping of ascending frequencies: consecutive gap <
// delta_cluster joins a cluster.
std::vector<std::vector<int>> unified_cluster(const std::vector<double>& omegas,
                                              double delta_cluster);

// alpha^2 * sum_{(w,w') in pairs} (Gamma(w)+Gamma*(w')) *
//   (A(w) rho A(w')+ - 1/2 {A(w')+ A(w), rho}), column-stacked.
Superoperator build_dissipator(const BathSpec& b,
                               const std::vector<BohrTerm>& terms,
                               const PairSet& pairs,
                               const BathResponse& response);

// alpha^2 * sum_{pairs} (Gamma(w)-Gamma*(w'))/(2i) * A(w')+ A(w).
// Zero matrix when the bath's Lamb shift is disabled.
Mat build_lamb_shift(const BathSpec& b, const std::vector<BohrTerm>& terms,
                     const PairSet& pairs, const BathResponse& response);

// -i[h, .] as a superoperator.
Superoperator commutator_superop(const Mat& h);

// Work shared by every method at one flux point: diagonalization, gap
// decomposition and bath response caches.
struct SharedPrep {
  EigenBasis basis;
  Mat h_eig;
  std::vector<std::vector<BohrTerm>> terms;    // per bath
  std::vector<BathResponse> responses;         // per bath
};

struct BathPieces {
  std::vector<BohrTerm> terms;
  BathResponse response;
  PairSet pairs;
  std::vector<BohrTerm> cluster_terms;  // unified only
  BathResponse cluster_response;        // unified only
  Superoperator dissipator;
  Mat lamb_shift;
  double tau_r = std::numeric_limits<double>::infinity();
};

struct GeneratorBundle {
  EigenBasis basis;
  Mat h_eig;
  std::vector<BathPieces> baths;
  Superoperator liouvillian;
  double tau_r_min = std::numeric_limits<double>::infinity();
};

SharedPrep prepare_point(const Mat& h_s, const CompositeSpace& space,
                         const std::vector<BathSpec>& baths,
                         const ToleranceSet& tol = {});

// Method-specific part only (pair retention, dissipators, Lamb shifts,
// final Liouvillian); this is the phase the method-comparison timer covers.
GeneratorBundle assemble_from_prep(const SharedPrep& prep,
                                   const std::vector<BathSpec>& baths,
                                   const GeneratorMethod& method,
                                   const ToleranceSet& tol = {});

GeneratorBundle build_generator(const Mat& h_s, const CompositeSpace& space,
                                const std::vector<BathSpec>& baths,
                                const GeneratorMethod& method,
                                const ToleranceSet& tol = {});

Superoperator assemble_liouvillian(const Mat& h_s, const CompositeSpace& space,
                                   const std::vector<BathSpec>& baths,
                                   const GeneratorMethod& method,
                                   const ToleranceSet& tol = {});

}  // namespace qhv
