#pragma once

#include <complex>

#include <Eigen/Dense>

namespace posmap {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Absolute entrywise tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Dense complex Hermitian matrix. Construction checks the symmetry
/// invariant to kHermitianTol, then stores the exactly symmetrized
/// average (H + H^dagger)/2 with the diagonal imaginary parts zeroed.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& mat() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }

 private:
  CMatrix m_;
};

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd herm_eigenvalues(const HermitianMatrix& h);

/// Determinant of a Hermitian matrix (real by symmetry). Computed by
/// complex LU with partial pivoting; the imaginary residue is checked
/// against a pivot-scaled bound to catch construction bugs.
double det_herm(const HermitianMatrix& h);

/// Rank-one projector-like outer product psi psi^dagger.
HermitianMatrix outer(const CVector& psi);

}  // namespace posmap
