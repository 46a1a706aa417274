#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace posmap {

/// The three (n/2)x(n/2) circulant matrices entering the even-pair
/// positivity condition:
///   A = (n-k) I + sum_{i=1}^{k/2} P^i
///   B = sum_{i=0}^{k/2-1} P^i
///   C = sum_{i=1}^{k/2} P^i
/// with P the cyclic permutation sum_i |e_i><e_{i+1}|.
struct CirculantTriple {
  int half = 0;
  Eigen::MatrixXd a, b, c;
};

/// P_m = sum_i |e_i><e_{i+1}| (mod m): (P x)_i = x_{i+1}.
Eigen::MatrixXd cyclic_permutation(int m);

CirculantTriple build_abc(int n, int k);

/// Closed-form spectrum of (C + C^T)/2 together with the extremes used by
/// the analytic conditions. c_min and c_max are taken over j >= 1; the j=0
/// eigenvalue k/2 sits on the all-ones direction, which the zero-sum
/// quadratic forms never see.
struct SpectrumReport {
  int n = 0;
  int k = 0;
  std::vector<double> values;  ///< c^{(0)} .. c^{(n/2-1)}
  double c_min = 0.0;
  double c_max = 0.0;
  std::optional<bool> bounds_ok;  ///< empty until checked, or k < 4
};

SpectrumReport c_spectrum(int n, int k);

/// mu = (5/2 sqrt((5 - sqrt 5)/2))^{-1}, about 0.34026: the reciprocal
/// slope constant of the sine chord on [0, pi/5].
double mu_constant();

/// For k >= 4, checks c_max <= k/2 and c_min >= -(mu (k+1) + 1)/2 and
/// stores the verdict in the report. Returns empty for k < 4 (bounds not
/// applicable), never false in that case.
std::optional<bool> check_spectrum_bounds(SpectrumReport& report);

}  // namespace posmap
