#include "posmap/analytic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "posmap/optim.hpp"
#include "posmap/rng.hpp"

namespace posmap {

std::string to_string(Category c) {
  switch (c) {
    case Category::COR1: return "COR1";
    case Category::COR2: return "COR2";
    case Category::PROP: return "PROP";
    case Category::THM2: return "THM2";
    case Category::UNRESOLVED: return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

namespace {
void require_even(int n, int k, const char* who) {
  if (n % 2 != 0 || k % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": n and k must be even");
}
}  // namespace

bool proposition_holds(int n, int k) {
  require_even(n, k, "proposition_holds");
  if (k == 2) return true;
  const SpectrumReport r = c_spectrum(n, k);
  const double a = n - k + r.c_min;
  const bool cond_max = a * (n - k + r.c_max) >= 0.25 * k * (n - 2) * r.c_max;
  const bool cond_min = a * a >= -0.25 * k * (n - 2) * r.c_min;
  return cond_max && cond_min;
}

bool cor1_holds(int n, int k) {
  require_even(n, k, "cor1_holds");
  const bool holds = (n == 2 * k) || (n == 2 * k + 2) || (n == 2 * k + 4);
  if (holds && !proposition_holds(n, k))
    throw std::logic_error("cor1_holds: window certificate without spectral certificate");
  return holds;
}

bool cor2_holds(int n, int k) {
  require_even(n, k, "cor2_holds");
  if (n < 4 || k < 4) return false;
  const double mu = mu_constant();
  const bool holds =
      16.0 * n >= 2.0 * k * k + 8.0 * (mu + 4.0) * k + 4.0 * (mu + 1.0) - 27.0;
  if (holds && !proposition_holds(n, k))
    throw std::logic_error("cor2_holds: growth certificate without spectral certificate");
  return holds;
}

Eigen::MatrixXd zero_sum_basis(int m) {
  if (m < 2) throw std::invalid_argument("zero_sum_basis: m must be >= 2");
  Eigen::MatrixXd q(m, m - 1);
  for (int i = 0; i < m - 1; ++i) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    w[i] = 1.0;
    w[i + 1] = -1.0;
    for (int j = 0; j < i; ++j) w -= q.col(j).dot(w) * q.col(j);
    q.col(i) = w / w.norm();
  }
  return q;
}

double thm2_quartic(int n, int k, const CirculantTriple& t,
                    const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double qu = u.dot(t.a * u) + u.dot(t.b * v);
  const double qv = v.dot(t.a * v) + v.dot(t.c * u);
  return 0.25 * n * k * u.minCoeff() * v.minCoeff() * (qu + qv) + qu * qv;
}

double thm2_infimum(int n, int k, int budget, std::uint64_t seed) {
  require_even(n, k, "thm2_infimum");
  if (budget < 1) throw std::invalid_argument("thm2_infimum: budget must be >= 1");
  const CirculantTriple t = build_abc(n, k);
  const int m = n / 2;
  const Eigen::MatrixXd q = zero_sum_basis(m);
  const int dim = 2 * (m - 1);

  const auto objective = [&](const Eigen::VectorXd& z) {
    const double nz = z.norm();
    if (nz < 1e-300) return 1e300;
    const Eigen::VectorXd zn = z / nz;
    const Eigen::VectorXd u = q * zn.head(m - 1);
    const Eigen::VectorXd v = q * zn.tail(m - 1);
    return thm2_quartic(n, k, t, u, v);
  };

  bool any = false;
  double best = 0.0;
  for (int i = 0; i < budget; ++i) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(i));
    const NmResult r = nelder_mead(objective, rng.unit_vector(dim));
    if (!r.converged) continue;  // skipped restart
    if (!any || r.value < best) best = r.value;
    any = true;
  }
  if (!any) throw std::runtime_error("thm2_infimum: no restart converged");
  return best;
}

ClassificationRecord classify(int n, int k, int budget, std::uint64_t seed,
                              bool with_thm2) {
  require_even(n, k, "classify");
  ClassificationRecord rec;
  rec.n = n;
  rec.k = k;
  rec.gcd = std::gcd(n, k);
  rec.budget = budget;
  rec.seed = seed;
  rec.cor1 = cor1_holds(n, k) ? TriState::True : TriState::False;
  rec.cor2 = cor2_holds(n, k) ? TriState::True : TriState::False;
  rec.prop = proposition_holds(n, k) ? TriState::True : TriState::False;
  if (with_thm2) {
    const double inf = thm2_infimum(n, k, budget, seed);
    rec.thm2_infimum = inf;
    rec.thm2_numeric = inf >= -1e-9 ? TriState::True : TriState::False;
  }
  if (rec.cor1 == TriState::True)
    rec.category = Category::COR1;
  else if (rec.cor2 == TriState::True)
    rec.category = Category::COR2;
  else if (rec.prop == TriState::True)
    rec.category = Category::PROP;
  else if (rec.thm2_numeric == TriState::True)
    rec.category = Category::THM2;
  else
    rec.category = Category::UNRESOLVED;
  return rec;
}

}  // namespace posmap
