#include "qhv/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace qhv {

GeneratorMethod GeneratorMethod::redfield() {
  GeneratorMethod m;
  m.kind = Kind::Redfield;
  return m;
}

GeneratorMethod GeneratorMethod::partial_secular(double c_psa) {
  if (c_psa <= 0.0) throw DomainError("C_PSA must be positive");
  GeneratorMethod m;
  m.kind = Kind::PartialSecular;
  m.c_psa = c_psa;
  return m;
}

GeneratorMethod GeneratorMethod::full_secular() {
  GeneratorMethod m;
  m.kind = Kind::FullSecular;
  return m;
}

GeneratorMethod GeneratorMethod::unified_auto() {
  GeneratorMethod m;
  m.kind = Kind::Unified;
  m.delta_auto = true;
  return m;
}

GeneratorMethod GeneratorMethod::unified(double delta_cluster) {
  if (delta_cluster <= 0.0)
    throw DomainError("cluster width must be positive");
  GeneratorMethod m;
  m.kind = Kind::Unified;
  m.delta_auto = false;
  m.delta_cluster = delta_cluster;
  return m;
}

namespace {

double parse_param(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + text + "'");
  }
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

GeneratorMethod GeneratorMethod::parse(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string param =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (name == "redfield") {
      if (!param.empty()) throw ConfigError("redfield takes no parameter");
      return redfield();
    }
    if (name == "psa")
      return partial_secular(param.empty() ? 100.0
                                           : parse_param(param, "C_PSA"));
    if (name == "full_secular") {
      if (!param.empty())
        throw ConfigError("full_secular takes no parameter");
      return full_secular();
    }
    if (name == "unified") {
      if (param.empty() || param == "auto") return unified_auto();
      return unified(parse_param(param, "cluster width"));
    }
  } catch (const DomainError& e) {
    // out-of-range parameters in a method string are configuration errors
    throw ConfigError(std::string(e.what()) + " in method '" + text + "'");
  }
  throw ConfigError("unknown method '" + text + "'");
}

std::string GeneratorMethod::label() const {
  switch (kind) {
    case Kind::Redfield:
      return "redfield";
    case Kind::PartialSecular:
      return "psa:" + format_param(c_psa);
    case Kind::FullSecular:
      return "full_secular";
    case Kind::Unified:
      return delta_auto ? "unified:auto"
                        : "unified:" + format_param(delta_cluster);
  }
  return "";
}

std::vector<BohrTerm> bohr_decompose(const EigenBasis& basis, const Mat& a,
                                     double tol_degeneracy) {
  if (tol_degeneracy <= 0.0)
    throw DomainError("degeneracy tolerance must be positive");
  const Eigen::Index d = basis.energies.size();
  if (a.rows() != d || a.cols() != d)
    throw ConsistencyError("operator dimension does not match the basis");
  const double norm_a = frobenius(a);
  if (frobenius(a - Mat(a.adjoint())) > 1e-12 * std::max(norm_a, 1.0))
    throw SymmetryError("gap decomposition requires a Hermitian operator");

  const Mat a_eig = basis.vectors.adjoint() * a * basis.vectors;

  // All gaps e_j - e_i, sorted; ties broken by index for determinism.
  struct Gap {
    double omega;
    int i, j;
  };
  std::vector<Gap> gaps;
  gaps.reserve(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gaps.push_back({basis.energies(j) - basis.energies(i), i, j});
  std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) {
    return std::tie(x.omega, x.i, x.j) < std::tie(y.omega, y.i, y.j);
  });

  std::vector<BohrTerm> terms;
  size_t start = 0;
  while (start < gaps.size()) {
    size_t stop = start + 1;
    while (stop < gaps.size() &&
           gaps[stop].omega - gaps[stop - 1].omega < tol_degeneracy)
      ++stop;
    double mean = 0.0;
    for (size_t k = start; k < stop; ++k) mean += gaps[k].omega;
    mean /= double(stop - start);
    Mat op = Mat::Zero(d, d);
    for (size_t k = start; k < stop; ++k)
      op(gaps[k].i, gaps[k].j) = a_eig(gaps[k].i, gaps[k].j);
    // The cutoff must sit well above eigenvector roundoff (~1e-13 here):
    // noise-level terms carry no rate weight but would still skew cluster
    // mean frequencies, breaking left-right rate symmetry.
    if (frobenius(op) > 1e-11 * norm_a) terms.push_back({mean, std::move(op)});
    start = stop;
  }
  return terms;
}

namespace {

double max_response_magnitude(const BathResponse& response) {
  double m = 0.0;
  for (size_t k = 0; k < response.gamma.size(); ++k)
    m = std::max(m, std::abs(response.response(k)));
  return m;
}

}  // namespace

PairSet psa_filter(const std::vector<BohrTerm>& terms,
                   const GeneratorMethod& method, const BathResponse& response,
                   double alpha) {
  if (terms.empty()) throw ConsistencyError("no Bohr terms to filter");
  if (response.gamma.size() != terms.size())
    throw ConsistencyError("bath response does not cover every Bohr term");
  const int n = static_cast<int>(terms.size());
  const double max_gamma = max_response_magnitude(response);

  PairSet out;
  out.tau_r = (alpha > 0.0 && max_gamma > 0.0)
                  ? 1.0 / (alpha * alpha * max_gamma)
                  : std::numeric_limits<double>::infinity();

  switch (method.kind) {
    case GeneratorMethod::Kind::Redfield:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.pairs.emplace_back(a, b);
      break;
    case GeneratorMethod::Kind::FullSecular:
      for (int a = 0; a < n; ++a) out.pairs.emplace_back(a, a);
      break;
    case GeneratorMethod::Kind::PartialSecular: {
      // Keep iff C_PSA / |w - w'| >= tau_R, written multiplied out so that
      // alpha = 0 degenerates to the diagonal set instead of 0/0.
      const double window = method.c_psa * alpha * alpha * max_gamma;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (std::abs(terms[a].omega - terms[b].omega) <= window)
            out.pairs.emplace_back(a, b);
      break;
    }
    case GeneratorMethod::Kind::Unified: {
      const double delta =
          method.delta_auto ? alpha * alpha * max_gamma : method.delta_cluster;
      std::vector<double> omegas(terms.size());
      for (size_t k = 0; k < terms.size(); ++k) omegas[k] = terms[k].omega;
      for (const auto& cluster : unified_cluster(omegas, delta))
        for (int a : cluster)
          for (int b : cluster) out.pairs.emplace_back(a, b);
      break;
    }
  }
  return out;
}

std::vector<std::vector<int>> unified_cluster(const std::vector<double>& omegas,
                                              double delta_cluster) {
  std::vector<std::vector<int>> clusters;
  if (omegas.empty()) return clusters;
  for (size_t k = 1; k < omegas.size(); ++k)
    if (omegas[k] < omegas[k - 1])
      throw ConsistencyError("cluster input must be sorted ascending");
  clusters.push_back({0});
  for (size_t k = 1; k < omegas.size(); ++k) {
    if (omegas[k] - omegas[clusters.back().back()] < delta_cluster)
      clusters.back().push_back(static_cast<int>(k));
    else
      clusters.push_back({static_cast<int>(k)});
  }
  return clusters;
}

/*
 * Assembly is grouped per retained frequency rather than per pair:
 * with K_a = sum of A_b over partners b of a (pair symmetry makes the
 * regrouping exact),
 *   sandwich = sum_a Gamma_a kron(conj K_a, A_a) + conj(Gamma_a) kron(conj A_a, K_a)
 *   M        = sum_a Gamma_a K_a+ A_a + conj(Gamma_a) A_a+ K_a   (Hermitian)
 *   D        = alpha^2 (sandwich - 1/2 (kron(I, M) + kron(M^T, I))).
 * Cost is therefore proportional to the retained term count, which is what
 * separates the unified method's runtime from PSA's.
 */
Superoperator build_dissipator(const BathSpec& b,
                               const std::vector<BohrTerm>& terms,
                               const PairSet& pairs,
                               const BathResponse& response) {
  if (terms.empty()) throw ConsistencyError("no Bohr terms to assemble");
  if (response.gamma.size() != terms.size())
    throw ConsistencyError("bath response does not cover every Bohr term");
  const int d = static_cast<int>(terms[0].op.rows());
  const int n = static_cast<int>(terms.size());
  const int dd = d * d;

  std::vector<Mat> partner_sum(n, Mat::Zero(d, d));
  for (const auto& [a, bb] : pairs.pairs) {
    if (a < 0 || a >= n || bb < 0 || bb >= n)
      throw ConsistencyError("pair index outside the Bohr term list");
    partner_sum[a] += terms[bb].op;
  }

  Mat sandwich = Mat::Zero(dd, dd);
  Mat m = Mat::Zero(d, d);
  for (int a = 0; a < n; ++a) {
    const cplx gam = response.response(a);
    const Mat& op = terms[a].op;
    const Mat& k_a = partner_sum[a];
    const Mat kc = k_a.conjugate();
    const Mat ac = op.conjugate();
    for (int p = 0; p < d; ++p) {
      for (int r = 0; r < d; ++r) {
        const cplx x1 = gam * kc(p, r);
        const cplx x2 = std::conj(gam) * ac(p, r);
        if (x1 == cplx(0.0, 0.0) && x2 == cplx(0.0, 0.0)) continue;
        sandwich.block(p * d, r * d, d, d) += x1 * op + x2 * k_a;
      }
    }
    m += gam * (k_a.adjoint() * op) + std::conj(gam) * (op.adjoint() * k_a);
  }

  const Mat eye = Mat::Identity(d, d);
  Mat total = sandwich - 0.5 * (kron(eye, m) + kron(m.transpose(), eye));
  total *= b.alpha * b.alpha;
  return {std::move(total), d};
}

Mat build_lamb_shift(const BathSpec& b, const std::vector<BohrTerm>& terms,
                     const PairSet& pairs, const BathResponse& response) {
  const int d = static_cast<int>(terms.at(0).op.rows());
  if (!b.lamb_shift_enabled) return Mat::Zero(d, d);
  if (response.gamma.size() != terms.size())
    throw ConsistencyError("bath response does not cover every Bohr term");
  const int n = static_cast<int>(terms.size());
  std::vector<Mat> partner_sum(n, Mat::Zero(d, d));
  for (const auto& [a, bb] : pairs.pairs) partner_sum[a] += terms[bb].op;

  Mat y = Mat::Zero(d, d);
  for (int a = 0; a < n; ++a)
    y += response.response(a) * (partner_sum[a].adjoint() * terms[a].op);
  Mat h_ls = (y - Mat(y.adjoint())) / cplx(0.0, 2.0);
  h_ls *= b.alpha * b.alpha;
  return h_ls;
}

Superoperator commutator_superop(const Mat& h) {
  const int d = static_cast<int>(h.rows());
  const Mat eye = Mat::Identity(d, d);
  Mat l = cplx(0.0, -1.0) * (kron(eye, h) - kron(h.transpose(), eye));
  return {std::move(l), d};
}

SharedPrep prepare_point(const Mat& h_s, const CompositeSpace& space,
                         const std::vector<BathSpec>& baths,
                         const ToleranceSet& tol) {
  if (baths.empty()) throw ConsistencyError("at least one bath is required");
  if (h_s.rows() != space.total_dim())
    throw LayoutError("Hamiltonian dimension does not match the space");
  SharedPrep prep;
  prep.basis = eigendecompose_hermitian(h_s);
  prep.h_eig = prep.basis.energies.cast<cplx>().asDiagonal();
  for (const BathSpec& b : baths) {
    b.validate();
    const Mat coupling = bath_coupling_operator(b.side, space);
    auto terms = bohr_decompose(prep.basis, coupling, tol.degeneracy);
    std::vector<double> omegas(terms.size());
    for (size_t k = 0; k < terms.size(); ++k) omegas[k] = terms[k].omega;
    prep.responses.push_back(build_bath_response(b, omegas, tol.quadrature));
    prep.terms.push_back(std::move(terms));
  }
  return prep;
}

GeneratorBundle assemble_from_prep(const SharedPrep& prep,
                                   const std::vector<BathSpec>& baths,
                                   const GeneratorMethod& method,
                                   const ToleranceSet& tol) {
  GeneratorBundle out;
  out.basis = prep.basis;
  out.h_eig = prep.h_eig;
  Mat h_total = prep.h_eig;
  Superoperator dissipator_sum{
      Mat::Zero(prep.h_eig.rows() * prep.h_eig.rows(),
                prep.h_eig.rows() * prep.h_eig.rows()),
      static_cast<int>(prep.h_eig.rows())};

  for (size_t bi = 0; bi < baths.size(); ++bi) {
    const BathSpec& b = baths[bi];
    BathPieces piece;
    piece.terms = prep.terms[bi];
    piece.response = prep.responses[bi];
    piece.pairs = psa_filter(piece.terms, method, piece.response, b.alpha);
    piece.tau_r = piece.pairs.tau_r;

    if (method.kind == GeneratorMethod::Kind::Unified) {
      const double max_gamma = max_response_magnitude(piece.response);
      const double delta = method.delta_auto ? b.alpha * b.alpha * max_gamma
                                             : method.delta_cluster;
      std::vector<double> omegas(piece.terms.size());
      for (size_t k = 0; k < piece.terms.size(); ++k)
        omegas[k] = piece.terms[k].omega;
      const auto clusters = unified_cluster(omegas, delta);
      const int d = static_cast<int>(prep.h_eig.rows());
      std::vector<double> cluster_omegas;
      for (const auto& cluster : clusters) {
        double mean = 0.0;
        Mat op = Mat::Zero(d, d);
        for (int k : cluster) {
          mean += omegas[k];
          op += piece.terms[k].op;
        }
        piece.cluster_terms.push_back(
            {mean / double(cluster.size()), std::move(op)});
        cluster_omegas.push_back(piece.cluster_terms.back().omega);
      }
      piece.cluster_response =
          build_bath_response(b, cluster_omegas, tol.quadrature);
      PairSet diag;
      diag.tau_r = piece.tau_r;
      for (size_t c = 0; c < clusters.size(); ++c)
        diag.pairs.emplace_back(static_cast<int>(c), static_cast<int>(c));
      piece.dissipator =
          build_dissipator(b, piece.cluster_terms, diag, piece.cluster_response);
      piece.lamb_shift =
          build_lamb_shift(b, piece.cluster_terms, diag, piece.cluster_response);
    } else {
      piece.dissipator =
          build_dissipator(b, piece.terms, piece.pairs, piece.response);
      piece.lamb_shift =
          build_lamb_shift(b, piece.terms, piece.pairs, piece.response);
    }

    h_total += piece.lamb_shift;
    dissipator_sum.matrix += piece.dissipator.matrix;
    out.tau_r_min = std::min(out.tau_r_min, piece.tau_r);
    out.baths.push_back(std::move(piece));
  }

  out.liouvillian = commutator_superop(h_total);
  out.liouvillian.matrix += dissipator_sum.matrix;
  return out;
}

GeneratorBundle build_generator(const Mat& h_s, const CompositeSpace& space,
                                const std::vector<BathSpec>& baths,
                                const GeneratorMethod& method,
                                const ToleranceSet& tol) {
  return assemble_from_prep(prepare_point(h_s, space, baths, tol), baths,
                            method, tol);
}

Superoperator assemble_liouvillian(const Mat& h_s, const CompositeSpace& space,
                                   const std::vector<BathSpec>& baths,
                                   const GeneratorMethod& method,
                                   const ToleranceSet& tol) {
  return build_generator(h_s, space, baths, method, tol).liouvillian;
}

}  // namespace qhv
