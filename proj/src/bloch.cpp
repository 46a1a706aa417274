#include "posmap/bloch.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "posmap/rng.hpp"

namespace posmap {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::pair<Complex, Complex> bloch_coeffs(double phi, double theta) {
  if (phi < -kPi - 1e-12 || phi > kPi + 1e-12)
    throw std::invalid_argument("bloch_coeffs: phi outside [-pi, pi]");
  if (theta < -1e-12 || theta > kPi + 1e-12)
    throw std::invalid_argument("bloch_coeffs: theta outside [0, pi]");
  return {Complex(std::cos(theta / 2.0), 0.0),
          std::polar(std::sin(theta / 2.0), phi)};
}

bool ScanGrid::complete() const {
  for (signed char s : state)
    if (s == 0) return false;
  return true;
}

ScanGrid make_grid(int n, int k, int phi_res, int theta_res,
                   const SearchSettings& settings) {
  if (std::gcd(n, k) != 3)
    throw std::invalid_argument("make_grid: gcd(n,k) must be 3");
  if (phi_res < 2 || theta_res < 2)
    throw std::invalid_argument("make_grid: grid must be at least 2x2");
  ScanGrid g;
  g.n = n;
  g.k = k;
  g.settings = settings;
  g.phi_values.resize(phi_res);
  for (int p = 0; p < phi_res; ++p)
    g.phi_values[p] = -kPi + 2.0 * kPi * p / phi_res;
  g.theta_values.resize(theta_res);
  for (int t = 0; t < theta_res; ++t)
    g.theta_values[t] = kPi * t / (theta_res - 1);
  g.lambda.assign(static_cast<size_t>(phi_res) * theta_res, kNaN);
  g.state.assign(g.lambda.size(), 0);
  return g;
}

namespace {

nlohmann::json grid_to_json(const ScanGrid& g) {
  nlohmann::json j;
  j["format"] = "posmap-scan-grid";
  j["n"] = g.n;
  j["k"] = g.k;
  j["phi_values"] = g.phi_values;
  j["theta_values"] = g.theta_values;
  nlohmann::json lam = nlohmann::json::array();
  nlohmann::json conv = nlohmann::json::array();
  for (size_t i = 0; i < g.lambda.size(); ++i) {
    if (g.state[i] == 0) {
      lam.push_back(nullptr);
      conv.push_back(nullptr);
    } else {
      lam.push_back(g.lambda[i]);
      conv.push_back(g.state[i] == 1);
    }
  }
  j["lambda"] = std::move(lam);
  j["converged"] = std::move(conv);
  j["settings"] = {{"restarts", g.settings.restarts},
                   {"seed", g.settings.seed},
                   {"inner_tol", g.settings.inner_tol},
                   {"newton_tol", g.settings.newton_tol},
                   {"max_newton_iters", g.settings.max_newton_iters},
                   {"zero_band", g.settings.zero_band}};
  return j;
}

ScanGrid grid_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "posmap-scan-grid")
    throw std::runtime_error("checkpoint: unrecognized format");
  ScanGrid g;
  g.n = j.at("n").get<int>();
  g.k = j.at("k").get<int>();
  g.phi_values = j.at("phi_values").get<std::vector<double>>();
  g.theta_values = j.at("theta_values").get<std::vector<double>>();
  const auto& s = j.at("settings");
  g.settings.restarts = s.at("restarts").get<int>();
  g.settings.seed = s.at("seed").get<std::uint64_t>();
  g.settings.inner_tol = s.at("inner_tol").get<double>();
  g.settings.newton_tol = s.at("newton_tol").get<double>();
  g.settings.max_newton_iters = s.at("max_newton_iters").get<int>();
  g.settings.zero_band = s.at("zero_band").get<double>();
  const auto& lam = j.at("lambda");
  const auto& conv = j.at("converged");
  const size_t count = g.phi_values.size() * g.theta_values.size();
  if (lam.size() != count || conv.size() != count)
    throw std::runtime_error("checkpoint: grid size mismatch");
  g.lambda.assign(count, kNaN);
  g.state.assign(count, 0);
  for (size_t i = 0; i < count; ++i) {
    if (lam[i].is_null()) continue;
    g.lambda[i] = lam[i].get<double>();
    g.state[i] = conv[i].get<bool>() ? 1 : 2;
  }
  return g;
}

bool compatible(const ScanGrid& a, const ScanGrid& b) {
  return a.n == b.n && a.k == b.k && a.phi_values == b.phi_values &&
         a.theta_values == b.theta_values &&
         a.settings.restarts == b.settings.restarts &&
         a.settings.seed == b.settings.seed &&
         a.settings.inner_tol == b.settings.inner_tol &&
         a.settings.newton_tol == b.settings.newton_tol &&
         a.settings.max_newton_iters == b.settings.max_newton_iters &&
         a.settings.zero_band == b.settings.zero_band;
}

struct PointResult {
  int p = 0;
  int t = 0;
  double lambda = 0.0;
  bool converged = false;
};

PointResult compute_point(const ScanGrid& g, int p, int t) {
  SearchSettings local = g.settings;
  local.seed = derive_seed(g.settings.seed, static_cast<std::uint64_t>(p),
                           static_cast<std::uint64_t>(t));
  const auto [alpha, beta] = bloch_coeffs(g.phi_values[p], g.theta_values[t]);
  const LambdaMaxResult r = lambda_max(g.n, g.k, {alpha, beta}, local);
  return PointResult{p, t, r.lambda_max, r.converged};
}

}  // namespace

std::string grid_to_json_string(const ScanGrid& grid) {
  return grid_to_json(grid).dump();
}

void save_checkpoint(const ScanGrid& grid, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_checkpoint: cannot open " + tmp);
    out << grid_to_json(grid).dump() << '\n';
    if (!out) throw std::runtime_error("save_checkpoint: write failed");
  }
  std::filesystem::rename(tmp, path);
}

ScanGrid load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return grid_from_json(j);
}

ScanStats scan(ScanGrid& grid, const std::string& checkpoint_path, int threads,
               const ScanProgress& progress) {
  if (grid.phi_res() < 2 || grid.theta_res() < 2)
    throw std::invalid_argument("scan: grid must be at least 2x2");
  ScanStats stats;

  if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path)) {
    ScanGrid loaded = load_checkpoint(checkpoint_path);
    if (!compatible(loaded, grid))
      throw std::runtime_error("scan: checkpoint does not match the requested grid");
    grid.lambda = std::move(loaded.lambda);
    grid.state = std::move(loaded.state);
  }

  const int P = grid.phi_res();
  const int T = grid.theta_res();
  const int total = P * T;
  int done = 0;
  for (signed char s : grid.state)
    if (s != 0) {
      ++done;
      ++stats.reused;
    }

  const auto checkpoint = [&]() {
    if (!checkpoint_path.empty()) save_checkpoint(grid, checkpoint_path);
  };
  checkpoint();

  // The poles first: one evaluation per pole, shared across phi (the
  // projector is phi-independent there).
  for (const int t : {0, T - 1}) {
    bool pending = false;
    for (int p = 0; p < P; ++p) pending |= grid.state[grid.index(p, t)] == 0;
    if (!pending) continue;
    const PointResult r = compute_point(grid, 0, t);
    ++stats.computed;
    if (!r.converged) ++stats.unconverged;
    for (int p = 0; p < P; ++p) {
      const int i = grid.index(p, t);
      if (grid.state[i] != 0) continue;
      grid.lambda[i] = r.lambda;
      grid.state[i] = r.converged ? 1 : 2;
      ++done;
    }
    checkpoint();
    if (progress && !progress(done, total)) return stats;
  }

  std::vector<std::pair<int, int>> tasks;
  for (int p = 0; p < P; ++p)
    for (int t = 1; t < T - 1; ++t)
      if (grid.state[grid.index(p, t)] == 0) tasks.emplace_back(p, t);
  if (tasks.empty()) return stats;

  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex write_mutex;

  const auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size() || stop.load()) return;
      const PointResult r = compute_point(grid, tasks[i].first, tasks[i].second);
      std::lock_guard<std::mutex> lock(write_mutex);
      const int idx = grid.index(r.p, r.t);
      grid.lambda[idx] = r.lambda;
      grid.state[idx] = r.converged ? 1 : 2;
      ++stats.computed;
      if (!r.converged) ++stats.unconverged;
      ++done;
      checkpoint();
      if (progress && !progress(done, total)) stop.store(true);
    }
  };

  const int pool = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> workers;
  workers.reserve(pool);
  for (int i = 0; i < pool; ++i) workers.emplace_back(worker);
  for (std::thread& w : workers) w.join();
  return stats;
}

void export_csv(const ScanGrid& grid, const std::string& path) {
  if (!grid.complete())
    throw std::runtime_error("export_csv: grid has pending points");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  out << "phi,theta,lambda_max,converged\n";
  const auto num = [](double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
  };
  for (int p = 0; p < grid.phi_res(); ++p)
    for (int t = 0; t < grid.theta_res(); ++t) {
      const int i = grid.index(p, t);
      out << num(grid.phi_values[p]) << ',' << num(grid.theta_values[t]) << ','
          << num(grid.lambda[i]) << ',' << (grid.state[i] == 1 ? 1 : 0) << '\n';
    }
  if (!out) throw std::runtime_error("export_csv: write failed");
}

CMatrix q_matrix(int n) {
  if (n < 3 || n % 3 != 0)
    throw std::invalid_argument("q_matrix: n must be a positive multiple of 3");
  CMatrix q = CMatrix::Zero(n, n);
  for (int b = 0; b < n; b += 3) {
    q(b, b + 1) = 1.0;
    q(b + 1, b + 2) = 1.0;
    q(b + 2, b) = 1.0;
  }
  return q;
}

CMatrix rotation_permutation(int n) {
  if (n < 3 || n % 3 != 0)
    throw std::invalid_argument("rotation_permutation: n must be a positive multiple of 3");
  CMatrix r = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) r(i, (i + 1) % n) = 1.0;
  return r;
}

double verify_rotation_identity(int n, Complex alpha, Complex beta) {
  if (n < 3 || n % 3 != 0)
    throw std::invalid_argument("verify_rotation_identity: n must be a multiple of 3");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
    throw std::invalid_argument("verify_rotation_identity: |alpha|^2 + |beta|^2 must be 1");
  const Complex w3 = std::polar(1.0, 2.0 * kPi / 3.0);
  const CVector lhs = subtraction_vector(n, 3, {alpha, w3 * beta});
  const CVector rhs =
      std::polar(1.0, -2.0 * kPi / 3.0) *
      (q_matrix(n) * subtraction_vector(n, 3, {alpha, beta})).eval();
  return (lhs - rhs).norm();
}

ConjectureReport conjecture_report(const ScanGrid& grid, double tol) {
  if (!grid.complete())
    throw std::runtime_error("conjecture_report: grid has pending points");
  const int P = grid.phi_res();
  const int T = grid.theta_res();
  if (P % 3 != 0)
    throw std::invalid_argument(
        "conjecture_report: phi resolution must be divisible by 3");
  ConjectureReport r;
  r.n = grid.n;
  r.k = grid.k;
  r.tol = tol;
  r.lo = grid.n - grid.k;
  r.hi = grid.n - grid.k + (grid.n - 3.0) / (grid.n - 2.0 * grid.k / 3.0);
  r.observed_min = grid.lambda[0];
  r.observed_max = grid.lambda[0];
  r.range_ok = true;
  for (size_t i = 0; i < grid.lambda.size(); ++i) {
    const double v = grid.lambda[i];
    r.observed_min = std::min(r.observed_min, v);
    r.observed_max = std::max(r.observed_max, v);
    if (v < r.lo - tol || v > r.hi + tol) r.range_ok = false;
    if (grid.state[i] == 2) ++r.unconverged;
  }
  r.pole_value = grid.lambda[grid.index(0, 0)];

  int p0 = 0, tmid = 0;
  for (int p = 1; p < P; ++p)
    if (std::abs(grid.phi_values[p]) < std::abs(grid.phi_values[p0])) p0 = p;
  for (int t = 1; t < T; ++t)
    if (std::abs(grid.theta_values[t] - kPi / 2) <
        std::abs(grid.theta_values[tmid] - kPi / 2))
      tmid = t;
  r.equator_value = grid.lambda[grid.index(p0, tmid)];

  r.symmetry_defect = 0.0;
  for (int p = 0; p < P; ++p)
    for (int t = 0; t < T; ++t)
      r.symmetry_defect = std::max(
          r.symmetry_defect, std::abs(grid.lambda[grid.index(p, t)] -
                                      grid.lambda[grid.index((p + P / 3) % P, t)]));
  return r;
}

}  // namespace posmap
