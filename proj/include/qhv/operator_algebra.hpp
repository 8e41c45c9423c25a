#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qhv/errors.hpp"

namespace qhv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Ordered subsystem layout of a tensor-product Hilbert space.
struct CompositeSpace {
  std::vector<int> dims;
  std::vector<std::string> labels;

  CompositeSpace(std::vector<int> d, std::vector<std::string> l);
  int total_dim() const;
  int slot_of(const std::string& label) const;  // LayoutError if absent
};

// Eigendecomposition of a Hermitian operator, energies ascending.
// Column phases are fixed: the largest-magnitude component of each
// eigenvector is real and positive, so output is deterministic.
struct EigenBasis {
  RVec energies;
  Mat vectors;
};

// n_levels x n_levels bosonic lowering operator, entry sqrt(k) at (k-1, k).
Mat annihilation(int n_levels);

// Kronecker product, row-major blocks: out[(i*p+k),(j*q+l)] = a(i,j)*b(k,l).
Mat kron(const Mat& a, const Mat& b);

// Identity on every slot except `slot`, which carries `op`.
Mat tensor_embed(const Mat& op, int slot, const CompositeSpace& space);

// Requires H Hermitian within 1e-12 * ||H||_F.
EigenBasis eigendecompose_hermitian(const Mat& h);

double frobenius(const Mat& m);

}  // namespace qhv
