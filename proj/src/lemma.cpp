#include "posmap/lemma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace posmap {

namespace {

void require_even_pair(int n, int k, const char* who) {
  if (n % 2 != 0 || k % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": n and k must be even");
  if (k < 2 || k > n - 2)
    throw std::invalid_argument(std::string(who) + ": need 2 <= k <= n-2");
}

/// Shift offsets of the circulant: B = sum of P^i for i in [0, k/2),
/// C for i in [1, k/2]. (P^i x)_r = x_{r+i}.
std::vector<int> power_offsets(int k, BilinearMatrix which) {
  std::vector<int> off;
  const int lo = which == BilinearMatrix::B ? 0 : 1;
  for (int i = lo; i < lo + k / 2; ++i) off.push_back(i);
  return off;
}

double bilinear(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                const std::vector<int>& offsets) {
  const int m = static_cast<int>(a.size());
  double s = 0.0;
  for (int i : offsets)
    for (int r = 0; r < m; ++r) s += a[r] * b[(r + i) % m];
  return s;
}

}  // namespace

Eigen::VectorXd sample_zero_sum_min_neg1(SplitMix64& rng, int m) {
  if (m < 2) throw std::invalid_argument("sample_zero_sum_min_neg1: m must be >= 2");
  for (;;) {
    Eigen::VectorXd w(m);
    for (int i = 0; i < m; ++i) w[i] = -std::log(rng.uniform01());
    w *= m / w.sum();
    w.array() -= 1.0;
    const double mn = w.minCoeff();
    if (mn > -1e-12) continue;  // degenerate draw, all entries equal
    return w / (-mn);
  }
}

double extremal_value(int n, int k, BilinearMatrix which) {
  require_even_pair(n, k, "extremal_value");
  const int m = n / 2;
  std::vector<long long> a(m, -1), b(m, -1);
  a[0] = m - 1;
  b[which == BilinearMatrix::B ? m - 1 : 0] = m - 1;
  long long total = 0;
  for (int i : power_offsets(k, which))
    for (int r = 0; r < m; ++r) total += a[r] * b[(r + i) % m];
  if (total != -static_cast<long long>(n) * k / 4)
    throw std::logic_error("extremal_value: extremal pair missed -nk/4");
  return static_cast<double>(total);
}

double pair_min_bound(int n, int samples, std::uint64_t seed) {
  if (n % 2 != 0) throw std::invalid_argument("pair_min_bound: n must be even");
  if (samples < 1) throw std::invalid_argument("pair_min_bound: samples must be >= 1");
  const int m = n / 2;
  SplitMix64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd a = sample_zero_sum_min_neg1(rng, m);
    const Eigen::VectorXd b = sample_zero_sum_min_neg1(rng, m);
    best = std::min(best, a.dot(b));
  }
  return best;
}

double bilinear_min_sample(int n, int k, BilinearMatrix which, int samples,
                           std::uint64_t seed) {
  require_even_pair(n, k, "bilinear_min_sample");
  if (samples < 1) throw std::invalid_argument("bilinear_min_sample: samples must be >= 1");
  const int m = n / 2;
  const std::vector<int> offsets = power_offsets(k, which);
  SplitMix64 rng(seed);

  Eigen::VectorXd best_a(m), best_b(m);
  best_a.setConstant(-1.0);
  best_b.setConstant(-1.0);
  best_a[0] = m - 1;
  best_b[which == BilinearMatrix::B ? m - 1 : 0] = m - 1;
  double best = bilinear(best_a, best_b, offsets);

  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd a = sample_zero_sum_min_neg1(rng, m);
    const Eigen::VectorXd b = sample_zero_sum_min_neg1(rng, m);
    const double val = bilinear(a, b, offsets);
    if (val < best) {
      best = val;
      best_a = a;
      best_b = b;
    }
  }

  // Local refinement: random perturbations projected back onto the
  // constraint set (zero sum, min = -1), kept when they improve.
  double sigma = 0.25;
  for (int t = 0; t < 400; ++t, sigma *= 0.99) {
    const auto perturb = [&](const Eigen::VectorXd& x) {
      Eigen::VectorXd g = rng.gaussian(m);
      g.array() -= g.mean();
      Eigen::VectorXd y = x + sigma * g;
      const double mn = y.minCoeff();
      if (mn >= -1e-12) return x;
      return Eigen::VectorXd(y / (-mn));
    };
    const Eigen::VectorXd a = perturb(best_a);
    const Eigen::VectorXd b = perturb(best_b);
    const double val = bilinear(a, b, offsets);
    if (val < best) {
      best = val;
      best_a = a;
      best_b = b;
    }
  }
  return best;
}

}  // namespace posmap
