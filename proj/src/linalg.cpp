#include "posmap/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace posmap {

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw std::invalid_argument("HermitianMatrix: matrix must be square, dim >= 1");
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTol)
        throw std::invalid_argument("HermitianMatrix: symmetry violation beyond tolerance");
  m_ = 0.5 * (m + m.adjoint());
  for (int i = 0; i < n; ++i) m_(i, i) = Complex(m_(i, i).real(), 0.0);
}

Eigen::VectorXd herm_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

double det_herm(const HermitianMatrix& h) {
  Eigen::PartialPivLU<CMatrix> lu(h.mat());
  const Complex det = lu.determinant();
  // Scale the residue check by the pivot magnitudes: near a singular point
  // the backward error of the factorization is set by the large pivots, not
  // by |det| itself.
  double pivot_scale = 1.0;
  for (int i = 0; i < h.dim(); ++i)
    pivot_scale *= std::max(1.0, std::abs(lu.matrixLU()(i, i)));
  if (std::abs(det.imag()) > 1e-9 * std::abs(det) + 1e-13 * pivot_scale)
    throw std::runtime_error("det_herm: determinant has a non-real residue");
  return det.real();
}

HermitianMatrix outer(const CVector& psi) {
  if (psi.size() < 1) throw std::invalid_argument("outer: empty vector");
  if (psi.squaredNorm() == 0.0) throw std::invalid_argument("outer: zero vector");
  return HermitianMatrix(psi * psi.adjoint());
}

}  // namespace posmap
