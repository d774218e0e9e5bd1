#pragma once

// Thin helpers around Eigen dense complex matrices.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>

namespace magicdist {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

inline bool approx_hermitian(const CMat& m, double tol) {
  return max_abs(m - m.adjoint()) <= tol;
}

// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
inline std::pair<Eigen::VectorXd, CMat> hermitian_eig(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

// Trace over the right factor of a dim_left x dim_right composite.
inline CMat partial_trace_right(const CMat& m, int dim_left, int dim_right) {
  if (m.rows() != static_cast<Eigen::Index>(dim_left) * dim_right || m.rows() != m.cols())
    throw std::invalid_argument("partial_trace_right: dimension mismatch");
  CMat out = CMat::Zero(dim_left, dim_left);
  for (int i = 0; i < dim_left; ++i)
    for (int j = 0; j < dim_left; ++j)
      for (int k = 0; k < dim_right; ++k)
        out(i, j) += m(i * dim_right + k, j * dim_right + k);
  return out;
}

}  // namespace magicdist
