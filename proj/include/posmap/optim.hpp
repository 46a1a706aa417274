#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace posmap {

struct NmOptions {
  double tol = 1e-10;  ///< simplex diameter at which the run counts as converged
  double edge = 0.35;  ///< initial simplex edge length
  int max_evals = 0;   ///< 0 means 600 * dim
};

struct NmResult {
  double value = 0.0;
  Eigen::VectorXd x;
  bool converged = false;
  int evals = 0;
};

/// Derivative-free downhill-simplex minimization with the dimension-adaptive
/// coefficients of Gao & Han. Deterministic: ties in the vertex ordering are
/// broken by insertion order.
template <class F>
NmResult nelder_mead(F&& f, const Eigen::VectorXd& x0,
                     const NmOptions& opts = {}) {
  const int d = static_cast<int>(x0.size());
  const int max_evals = opts.max_evals > 0 ? opts.max_evals : 600 * d;
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / d;
  const double gamma = 0.75 - 1.0 / (2.0 * d);
  const double delta = 1.0 - 1.0 / d;

  std::vector<Eigen::VectorXd> pts(d + 1, x0);
  std::vector<double> val(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1][i] += opts.edge;

  NmResult res;
  for (int i = 0; i <= d; ++i) val[i] = f(pts[i]);
  res.evals = d + 1;

  std::vector<int> order(d + 1);
  while (res.evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return val[a] < val[b]; });
    {
      std::vector<Eigen::VectorXd> p2(d + 1);
      std::vector<double> v2(d + 1);
      for (int i = 0; i <= d; ++i) {
        p2[i] = pts[order[i]];
        v2[i] = val[order[i]];
      }
      pts.swap(p2);
      val.swap(v2);
    }

    double diam = 0.0;
    for (int i = 1; i <= d; ++i)
      diam = std::max(diam, (pts[i] - pts[0]).norm());
    if (diam < opts.tol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) centroid += pts[i];
    centroid /= d;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - pts[d]);
    const double fr = f(xr);
    ++res.evals;

    if (fr < val[0]) {
      const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = f(xe);
      ++res.evals;
      if (fe < fr) {
        pts[d] = xe;
        val[d] = fe;
      } else {
        pts[d] = xr;
        val[d] = fr;
      }
    } else if (fr < val[d - 1]) {
      pts[d] = xr;
      val[d] = fr;
    } else if (fr < val[d]) {
      const Eigen::VectorXd xc = centroid + gamma * (xr - centroid);
      const double fc = f(xc);
      ++res.evals;
      if (fc <= fr) {
        pts[d] = xc;
        val[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          pts[i] = pts[0] + delta * (pts[i] - pts[0]);
          val[i] = f(pts[i]);
          ++res.evals;
        }
      }
    } else {
      const Eigen::VectorXd xc = centroid - gamma * (xr - centroid);
      const double fc = f(xc);
      ++res.evals;
      if (fc < val[d]) {
        pts[d] = xc;
        val[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          pts[i] = pts[0] + delta * (pts[i] - pts[0]);
          val[i] = f(pts[i]);
          ++res.evals;
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= d; ++i)
    if (val[i] < val[best]) best = i;
  res.value = val[best];
  res.x = pts[best];
  return res;
}

}  // namespace posmap
