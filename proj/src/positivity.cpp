#include "posmap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "posmap/optim.hpp"
#include "posmap/rng.hpp"

namespace posmap {

namespace {

std::vector<Eigen::VectorXd> make_starts(int count, int dim, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(count);
  for (int i = 0; i < count; ++i) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(i));
    starts.push_back(rng.unit_vector(dim));
  }
  return starts;
}

struct GEval {
  double value = 0.0;
  Eigen::VectorXd witness;
  int converged = 0;
};

GEval min_over_starts(const DetObjective& objective,
                      const std::vector<Eigen::VectorXd>& starts,
                      double inner_tol) {
  GEval out;
  bool any = false;
  for (const Eigen::VectorXd& x0 : starts) {
    NmOptions opts;
    opts.tol = inner_tol;
    const NmResult r = nelder_mead(objective, x0, opts);
    if (!r.converged) continue;
    ++out.converged;
    if (!any || r.value < out.value) {
      out.value = r.value;
      out.witness = r.x.normalized();
      any = true;
    }
  }
  if (!any)
    throw SearchFailure("robust_min: no restart converged (restarts=" +
                        std::to_string(starts.size()) + ")");
  return out;
}

}  // namespace

DetObjective::DetObjective(const MapSpec& spec)
    : n_(spec.n), k_(spec.k), lambda_(spec.lambda), lu_(spec.n) {
  if (spec.d >= 2) {
    const CVector v = subtraction_vector(spec.n, spec.d, spec.coeffs);
    projector_ = v * v.adjoint();
  }
  xn_.resize(n_);
  dw_.resize(n_);
  work_.resize(n_, n_);
}

double DetObjective::operator()(const Eigen::VectorXd& x) const {
  const double nrm = x.norm();
  if (nrm < 1e-300) return 1e300;
  xn_ = x / nrm;
  for (int i = 0; i < n_; ++i) {
    double s = (n_ - k_) * xn_[i] * xn_[i];
    for (int m = 1; m <= k_; ++m) {
      const int j = (i + m) % n_;
      s += xn_[j] * xn_[j];
    }
    dw_[i] = s;
  }
  const bool subtract = projector_.size() > 0 && lambda_ != 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Complex val = -xn_[i] * xn_[j];
      if (subtract) val -= lambda_ * xn_[i] * xn_[j] * projector_(i, j);
      if (i == j) val += dw_[i];
      work_(i, j) = val;
    }
  }
  lu_.compute(work_);
  const Complex det = lu_.determinant();
  double pivot_scale = 1.0;
  for (int i = 0; i < n_; ++i)
    pivot_scale *= std::max(1.0, std::abs(lu_.matrixLU()(i, i)));
  if (std::abs(det.imag()) > 1e-9 * std::abs(det) + 1e-13 * pivot_scale)
    throw std::runtime_error("det_objective: determinant has a non-real residue");
  return det.real();
}

double det_objective(const MapSpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.n)
    throw std::invalid_argument("det_objective: dimension mismatch");
  if (x.norm() == 0.0) throw std::invalid_argument("det_objective: zero vector");
  return DetObjective(spec)(x);
}

RobustMinResult robust_min(const MapSpec& spec, const SearchSettings& settings) {
  if (settings.restarts < 1)
    throw std::invalid_argument("robust_min: restarts must be >= 1");
  const DetObjective objective(spec);
  const auto starts = make_starts(settings.restarts, spec.n, settings.seed);
  const GEval g = min_over_starts(objective, starts, settings.inner_tol);
  return RobustMinResult{g.value, g.witness, g.converged};
}

LambdaMaxResult lambda_max(int n, int k, const std::vector<Complex>& coeffs,
                           const SearchSettings& settings) {
  MapSpec spec(n, k, 0.0, coeffs);
  if (spec.d < 2)
    throw std::invalid_argument("lambda_max: gcd(n,k) must be >= 2");
  DetObjective objective(spec);
  const auto starts = make_starts(settings.restarts, n, settings.seed);

  const auto g = [&](double lambda) {
    objective.set_lambda(lambda);
    return min_over_starts(objective, starts, settings.inner_tol);
  };

  LambdaMaxResult res;
  double lam_prev = n;
  GEval g_prev = g(lam_prev);
  if (std::abs(g_prev.value) <= settings.zero_band) {
    res.lambda_max = lam_prev;
    res.converged = true;
    res.final_objective = g_prev.value;
    res.witness_x = g_prev.witness;
    return res;
  }
  double lam = n - 1.0;
  GEval cur = g(lam);

  for (;;) {
    if (std::abs(cur.value) <= settings.zero_band) {
      res.converged = true;
      break;
    }
    if (res.iterations >= settings.max_newton_iters) break;
    const double denom = cur.value - g_prev.value;
    double next;
    if (denom == 0.0)
      next = lam - settings.newton_tol;  // degenerate secant, nudge downward
    else
      next = lam - cur.value * (lam - lam_prev) / denom;
    next = std::clamp(next, 0.0, static_cast<double>(n));
    const double step = std::abs(next - lam);
    lam_prev = lam;
    g_prev = cur;
    lam = next;
    cur = g(lam);
    ++res.iterations;
    if (step <= settings.newton_tol) {
      res.converged = std::abs(cur.value) <= settings.zero_band;
      break;
    }
  }
  res.lambda_max = std::clamp(lam, 0.0, static_cast<double>(n));
  res.final_objective = cur.value;
  res.witness_x = cur.witness;
  return res;
}

double d2_witness(int n, int k, double lambda, const CVector& psi) {
  if (n % 2 != 0) throw std::invalid_argument("d2_witness: n must be even");
  if (psi.size() != n) throw std::invalid_argument("d2_witness: dimension mismatch");
  const double nrm = psi.norm();
  if (nrm == 0.0) throw std::invalid_argument("d2_witness: zero vector");
  Eigen::VectorXd a2(n);
  for (int i = 0; i < n; ++i) a2[i] = std::norm(psi[i] / nrm);
  const Eigen::VectorXd dw = tau_diag(n, k, a2);
  double x_ev = 0.0, x_od = 0.0, d_ev = 0.0, d_od = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      x_ev += a2[i];
      d_ev += dw[i] * a2[i];
    } else {
      x_od += a2[i];
      d_od += dw[i] * a2[i];
    }
  }
  const double lo = lambda / n;
  return (d_ev - (1.0 + lo) * x_ev * x_ev) * (d_od - (1.0 + lo) * x_od * x_od) -
         (1.0 - lo) * (1.0 - lo) * x_ev * x_ev * x_od * x_od;
}

bool is_positive(const MapSpec& spec, const SearchSettings& settings) {
  const RobustMinResult r = robust_min(spec, settings);
  if (r.value < -settings.zero_band) return false;
  // Guard against an even number of negative eigenvalues hiding behind a
  // nonnegative determinant at the witness.
  const HermitianMatrix out =
      optimized_apply(spec, outer(r.argmin.cast<Complex>()));
  const Eigen::VectorXd eigs = herm_eigenvalues(out);
  return eigs[0] >= -1e-6 * spec.n;
}

}  // namespace posmap
