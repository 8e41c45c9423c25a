#include "qhv/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qhv {

CompositeSpace::CompositeSpace(std::vector<int> d, std::vector<std::string> l)
    : dims(std::move(d)), labels(std::move(l)) {
  if (dims.empty() || dims.size() != labels.size())
    throw LayoutError("composite space needs one label per subsystem");
  for (int n : dims)
    if (n < 2) throw InvalidDimensionError("subsystem dimension must be >= 2");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw LayoutError("subsystem labels must be unique");
}

int CompositeSpace::total_dim() const {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

int CompositeSpace::slot_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw LayoutError("no subsystem labelled '" + label + "'");
}

Mat annihilation(int n_levels) {
  if (n_levels < 2)
    throw InvalidDimensionError("annihilation operator needs >= 2 levels");
  Mat a = Mat::Zero(n_levels, n_levels);
  for (int k = 1; k < n_levels; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

Mat kron(const Mat& a, const Mat& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  Mat out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

Mat tensor_embed(const Mat& op, int slot, const CompositeSpace& space) {
  if (slot < 0 || slot >= static_cast<int>(space.dims.size()))
    throw LayoutError("tensor slot out of range");
  if (op.rows() != op.cols() || op.rows() != space.dims[slot])
    throw LayoutError("operator dimension does not match its slot");
  Mat out = Mat::Identity(1, 1);
  for (size_t s = 0; s < space.dims.size(); ++s) {
    if (static_cast<int>(s) == slot)
      out = kron(out, op);
    else
      out = kron(out, Mat::Identity(space.dims[s], space.dims[s]));
  }
  return out;
}

double frobenius(const Mat& m) { return m.norm(); }

EigenBasis eigendecompose_hermitian(const Mat& h) {
  if (h.rows() != h.cols())
    throw SymmetryError("eigendecomposition needs a square matrix");
  const double scale = frobenius(h);
  if (frobenius(h - Mat(h.adjoint())) > 1e-12 * std::max(scale, 1.0))
    throw SymmetryError("matrix is not Hermitian within tolerance");

  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalAccuracyError("Hermitian eigensolver failed to converge");

  EigenBasis basis;
  basis.energies = solver.eigenvalues();
  basis.vectors = solver.eigenvectors();

  // Phase fix for reproducibility: rotate each column so its
  // largest-magnitude entry is real and positive.
  for (Eigen::Index c = 0; c < basis.vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < basis.vectors.rows(); ++r) {
      double m = std::abs(basis.vectors(r, c));
      if (m > best) {
        best = m;
        imax = r;
      }
    }
    cplx z = basis.vectors(imax, c);
    if (best > 0.0) basis.vectors.col(c) *= std::conj(z) / std::abs(z);
  }
  return basis;
}

}  // namespace qhv
