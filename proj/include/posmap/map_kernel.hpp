#pragma once

#include <vector>

#include "posmap/linalg.hpp"

namespace posmap {

/// Parameters of one optimized map instance: tau_{n,k} minus lambda times
/// the Hadamard projection onto the subtraction vector with coefficients
/// alpha_1..alpha_{d-1}, d = gcd(n,k).
struct MapSpec {
  int n;
  int k;
  double lambda;
  std::vector<Complex> coeffs;
  int d;  ///< gcd(n,k), recomputed on construction

  MapSpec(int n, int k, double lambda, std::vector<Complex> coeffs = {});
};

/// Projection onto the diagonal part: off-diagonal entries zeroed.
CMatrix diagonal_part(const CMatrix& x);

/// Cyclic shift S with S e_i = e_{(i+1) mod n}.
CMatrix shift_matrix(int n);

/// Diagonal weight vector of tau_{n,k}: D_i = (n-k) d_i + d_{i+1} + ... + d_{i+k}
/// (indices mod n), where d is the diagonal of X.
Eigen::VectorXd tau_diag(int n, int k, const Eigen::VectorXd& diag);
Eigen::VectorXd tau_diag(int n, int k, const HermitianMatrix& x);

/// tau_{n,k}(X) = Diag(D(X)) - X.
HermitianMatrix tau_apply(int n, int k, const HermitianMatrix& x);

/// Unit-norm subtraction vector sum_r alpha_r v_r with
/// (v_r)_j = omega^{(n/d) r j} / sqrt(n), omega = exp(2 pi i / n).
CVector subtraction_vector(int n, int d, const std::vector<Complex>& coeffs);

/// Hadamard projection: result_ij = v_i conj(v_j) X_ij. Completely positive
/// for unit v by the Schur product theorem.
HermitianMatrix hadamard_project(const CVector& v, const HermitianMatrix& x);

/// tau_{n,k}(X) - lambda * (P_v o X). With lambda = 0 (or d = 1) this is
/// exactly tau_apply.
HermitianMatrix optimized_apply(const MapSpec& spec, const HermitianMatrix& x);

}  // namespace posmap
