#include "posmap/circulant.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace posmap {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_even_pair(int n, int k, const char* who) {
  if (n % 2 != 0 || k % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": n and k must be even");
  if (k < 2 || k > n - 2)
    throw std::invalid_argument(std::string(who) + ": need 2 <= k <= n-2");
}
}  // namespace

Eigen::MatrixXd cyclic_permutation(int m) {
  if (m < 1) throw std::invalid_argument("cyclic_permutation: m must be >= 1");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) p(i, (i + 1) % m) = 1.0;
  return p;
}

CirculantTriple build_abc(int n, int k) {
  require_even_pair(n, k, "build_abc");
  const int m = n / 2;
  const Eigen::MatrixXd p = cyclic_permutation(m);
  CirculantTriple t;
  t.half = m;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(m, m);
  t.a = (n - k) * Eigen::MatrixXd::Identity(m, m);
  t.b = Eigen::MatrixXd::Zero(m, m);
  t.c = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i <= k / 2; ++i) {
    if (i <= k / 2 - 1) t.b += power;
    if (i >= 1) {
      t.a += power;
      t.c += power;
    }
    power = (power * p).eval();
  }
  return t;
}

SpectrumReport c_spectrum(int n, int k) {
  require_even_pair(n, k, "c_spectrum");
  SpectrumReport r;
  r.n = n;
  r.k = k;
  r.values.resize(n / 2);
  r.values[0] = k / 2.0;
  for (int j = 1; j < n / 2; ++j) {
    const double den = std::sin(2.0 * kPi * j / n);
    assert(den > 0.0);  // 0 < 2 pi j / n < pi on this index range
    r.values[j] = 0.5 * (std::sin(2.0 * kPi * (k + 1) * j / n) / den - 1.0);
  }
  r.c_min = r.values[1];
  r.c_max = r.values[1];
  for (int j = 2; j < n / 2; ++j) {
    r.c_min = std::min(r.c_min, r.values[j]);
    r.c_max = std::max(r.c_max, r.values[j]);
  }
  return r;
}

double mu_constant() {
  return 1.0 / (2.5 * std::sqrt(0.5 * (5.0 - std::sqrt(5.0))));
}

std::optional<bool> check_spectrum_bounds(SpectrumReport& report) {
  if (report.k < 4) return std::nullopt;
  const double mu = mu_constant();
  const bool ok = report.c_max <= report.k / 2.0 + 1e-12 &&
                  report.c_min >= -0.5 * (mu * (report.k + 1) + 1.0) - 1e-12;
  report.bounds_ok = ok;
  return ok;
}

}  // namespace posmap
