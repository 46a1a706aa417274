#pragma once

#include <cstdint>
#include <stdexcept>

#include "posmap/map_kernel.hpp"

namespace posmap {

struct SearchSettings {
  int restarts = 50;            ///< M, multistart count
  std::uint64_t seed = 0;
  double inner_tol = 1e-10;     ///< simplex diameter for a successful run
  double newton_tol = 1e-4;     ///< |lambda step| stopping threshold
  int max_newton_iters = 40;
  double zero_band = 1e-8;      ///< objective values in [-band, band] count as zero
};

struct SearchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RobustMinResult {
  double value = 0.0;
  Eigen::VectorXd argmin;       ///< normalized minimizing direction
  int converged_restarts = 0;
};

struct LambdaMaxResult {
  double lambda_max = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_objective = 0.0;
  Eigen::VectorXd witness_x;
};

/// det of the optimized map applied to the rank-one projector of x/|x|.
/// Scale-free in x by the internal normalization.
double det_objective(const MapSpec& spec, const Eigen::VectorXd& x);

/// Preallocated hot-path evaluator for det_objective, reused across the
/// thousands of evaluations a multistart search performs.
class DetObjective {
 public:
  explicit DetObjective(const MapSpec& spec);

  double operator()(const Eigen::VectorXd& x) const;
  void set_lambda(double lambda) { lambda_ = lambda; }
  double lambda() const { return lambda_; }

 private:
  int n_, k_;
  double lambda_;
  CMatrix projector_;  ///< P_v, or empty when d = 1
  mutable Eigen::VectorXd xn_, dw_;
  mutable CMatrix work_;
  mutable Eigen::PartialPivLU<CMatrix> lu_;
};

/// Minimum of det_objective over `restarts` simplex runs from independent
/// Gaussian unit starts (restart i seeded with seed + i). Only runs whose
/// simplex contracted below inner_tol count; if none do, throws
/// SearchFailure. Deterministic for a fixed seed.
RobustMinResult robust_min(const MapSpec& spec, const SearchSettings& settings);

/// Largest lambda with vanishing robust minimum, located by a secant
/// iteration on g(lambda) started from (n, n-1). Every g evaluation within
/// one call reuses the same frozen start set, so g is a deterministic
/// function of lambda and the secant sees a smooth objective. The result
/// is clamped to [0, n].
LambdaMaxResult lambda_max(int n, int k, const std::vector<Complex>& coeffs,
                           const SearchSettings& settings);

/// The scalar even/odd-sector witness for alternating-vector subtraction:
///   [D_ev - (1+lambda/n) X_ev^2][D_od - (1+lambda/n) X_od^2]
///     - (1-lambda/n)^2 X_ev^2 X_od^2
/// evaluated on the unit-normalized psi. Nonnegative for every psi exactly
/// when the reduced 2x2 form on span{psi, psi~} is positive semidefinite.
double d2_witness(int n, int k, double lambda, const CVector& psi);

/// True iff the robust minimum clears -zero_band; the eigenvalues of the
/// output at the returned witness are checked as well, since a determinant
/// can stay positive with an even number of negative eigenvalues.
bool is_positive(const MapSpec& spec, const SearchSettings& settings);

}  // namespace posmap
