#include "posmap/map_kernel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace posmap {

namespace {
constexpr double kPi = 3.14159265358979323846;

double coeff_norm_sq(const std::vector<Complex>& coeffs) {
  double s = 0.0;
  for (const Complex& c : coeffs) s += std::norm(c);
  return s;
}
}  // namespace

MapSpec::MapSpec(int n_, int k_, double lambda_, std::vector<Complex> coeffs_)
    : n(n_), k(k_), lambda(lambda_), coeffs(std::move(coeffs_)), d(0) {
  if (n < 2) throw std::invalid_argument("MapSpec: n must be >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("MapSpec: need 1 <= k <= n-1");
  if (lambda < 0.0) throw std::invalid_argument("MapSpec: lambda must be >= 0");
  d = std::gcd(n, k);
  if (d == 1) {
    if (!coeffs.empty())
      throw std::invalid_argument("MapSpec: gcd(n,k)=1 admits no subtraction vector");
    if (lambda != 0.0)
      throw std::invalid_argument("MapSpec: lambda must be 0 when gcd(n,k)=1");
  } else {
    if (static_cast<int>(coeffs.size()) != d - 1)
      throw std::invalid_argument("MapSpec: coefficient count must equal gcd(n,k)-1");
    if (std::abs(coeff_norm_sq(coeffs) - 1.0) > 1e-12)
      throw std::invalid_argument("MapSpec: coefficients must have unit norm");
  }
}

CMatrix diagonal_part(const CMatrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("diagonal_part: matrix must be square");
  return x.diagonal().asDiagonal();
}

CMatrix shift_matrix(int n) {
  if (n < 2) throw std::invalid_argument("shift_matrix: n must be >= 2");
  CMatrix s = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) s((i + 1) % n, i) = 1.0;
  return s;
}

Eigen::VectorXd tau_diag(int n, int k, const Eigen::VectorXd& diag) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("tau_diag: need 1 <= k <= n-1");
  if (diag.size() != n) throw std::invalid_argument("tau_diag: diagonal length mismatch");
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double s = (n - k) * diag[i];
    for (int m = 1; m <= k; ++m) s += diag[(i + m) % n];
    out[i] = s;
  }
  return out;
}

Eigen::VectorXd tau_diag(int n, int k, const HermitianMatrix& x) {
  if (x.dim() != n) throw std::invalid_argument("tau_diag: dimension mismatch");
  return tau_diag(n, k, x.mat().diagonal().real().eval());
}

HermitianMatrix tau_apply(int n, int k, const HermitianMatrix& x) {
  const Eigen::VectorXd d = tau_diag(n, k, x);
  CMatrix out = -x.mat();
  for (int i = 0; i < n; ++i) out(i, i) += d[i];
  return HermitianMatrix(out);
}

CVector subtraction_vector(int n, int d, const std::vector<Complex>& coeffs) {
  if (d < 2) throw std::invalid_argument("subtraction_vector: d must be >= 2");
  if (n % d != 0) throw std::invalid_argument("subtraction_vector: d must divide n");
  if (static_cast<int>(coeffs.size()) != d - 1)
    throw std::invalid_argument("subtraction_vector: need d-1 coefficients");
  if (std::abs(coeff_norm_sq(coeffs) - 1.0) > 1e-12)
    throw std::invalid_argument("subtraction_vector: coefficients must have unit norm");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector v = CVector::Zero(n);
  for (int r = 1; r < d; ++r) {
    for (int j = 0; j < n; ++j) {
      // omega^{(n/d) r j} depends on the exponent mod n only; reducing first
      // keeps the argument of polar small.
      const long long e = (static_cast<long long>(n / d) * r * j) % n;
      v[j] += coeffs[r - 1] * std::polar(scale, 2.0 * kPi * static_cast<double>(e) / n);
    }
  }
  return v;
}

HermitianMatrix hadamard_project(const CVector& v, const HermitianMatrix& x) {
  if (v.size() != x.dim())
    throw std::invalid_argument("hadamard_project: dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("hadamard_project: vector must have unit norm");
  return HermitianMatrix((v * v.adjoint()).cwiseProduct(x.mat()));
}

HermitianMatrix optimized_apply(const MapSpec& spec, const HermitianMatrix& x) {
  if (x.dim() != spec.n)
    throw std::invalid_argument("optimized_apply: dimension mismatch");
  if (spec.d == 1 || spec.lambda == 0.0) return tau_apply(spec.n, spec.k, x);
  const CVector v = subtraction_vector(spec.n, spec.d, spec.coeffs);
  const CMatrix hv = (v * v.adjoint()).cwiseProduct(x.mat());
  return HermitianMatrix(tau_apply(spec.n, spec.k, x).mat() - spec.lambda * hv);
}

}  // namespace posmap
