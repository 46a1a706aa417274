#include "posmap/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "posmap/lemma.hpp"
#include "posmap/serialize.hpp"

namespace posmap::cli {

namespace {

struct Verification {
  bool failed = false;
};

void cmd_spectrum(int n, int k, std::uint64_t seed, std::ostream& out,
                  Verification& v) {
  SpectrumReport report = c_spectrum(n, k);
  const auto ok = check_spectrum_bounds(report);
  nlohmann::json j = to_json(report);
  j["seed"] = seed;
  out << j.dump() << '\n';
  if (ok.has_value() && !*ok) v.failed = true;
}

void cmd_classify(int n_max, int budget, std::uint64_t seed, bool with_thm2,
                  const std::string& csv_path, std::ostream& out) {
  std::vector<ClassificationRecord> records;
  for (int n = 4; n <= n_max; n += 2)
    for (int k = 2; k <= n - 2; k += 2)
      records.push_back(classify(n, k, budget, seed, with_thm2));
  for (const auto& rec : records) out << to_json(rec).dump() << '\n';
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("classify: cannot open " + csv_path);
    csv << "n,k,category\n";
    for (const auto& rec : records)
      csv << rec.n << ',' << rec.k << ',' << to_string(rec.category) << '\n';
  }
}

std::vector<Complex> resolve_coeffs(int n, int k, bool have_bloch, double phi,
                                    double theta, double are, double aim,
                                    double bre, double bim) {
  const int d = std::gcd(n, k);
  if (d < 2)
    throw CLI::ValidationError("lambda-max", "gcd(n,k) must be >= 2");
  if (have_bloch) {
    if (d != 3)
      throw CLI::ValidationError("lambda-max",
                                 "--phi/--theta require gcd(n,k) = 3");
    const auto [alpha, beta] = bloch_coeffs(phi, theta);
    return {alpha, beta};
  }
  std::vector<Complex> coeffs;
  if (d == 2) {
    coeffs = {Complex(are, aim)};
  } else if (d == 3) {
    coeffs = {Complex(are, aim), Complex(bre, bim)};
  } else {
    throw CLI::ValidationError(
        "lambda-max", "only gcd(n,k) of 2 or 3 is supported on the CLI");
  }
  double norm_sq = 0.0;
  for (const Complex& c : coeffs) norm_sq += std::norm(c);
  if (std::abs(norm_sq - 1.0) > 1e-8)
    throw CLI::ValidationError("lambda-max",
                               "coefficients must have unit norm");
  for (Complex& c : coeffs) c /= std::sqrt(norm_sq);
  return coeffs;
}

int run_guarded(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"positive-map optimization toolbox"};
  app.require_subcommand(1);

  Verification verification;

  // spectrum
  auto* sp = app.add_subcommand("spectrum",
                                "closed-form spectrum of the symmetrized circulant");
  int sp_n = 0, sp_k = 0;
  std::uint64_t sp_seed = 0;
  sp->add_option("--n", sp_n, "matrix dimension (even)")->required();
  sp->add_option("--k", sp_k, "shift count (even)")->required();
  sp->add_option("--seed", sp_seed, "echoed in the output");
  sp->callback([&] { cmd_spectrum(sp_n, sp_k, sp_seed, out, verification); });

  // classify
  auto* cl = app.add_subcommand("classify",
                                "evaluate positivity certificates for even pairs");
  int cl_nmax = 30, cl_budget = 200;
  std::uint64_t cl_seed = 0;
  bool cl_thm2 = false;
  std::string cl_csv;
  cl->add_option("--n-max", cl_nmax, "largest n (default 30)");
  cl->add_option("--budget", cl_budget, "restarts for the numeric check");
  cl->add_option("--seed", cl_seed, "seed for the numeric check");
  cl->add_flag("--with-thm2", cl_thm2, "run the numeric quadratic-form check");
  cl->add_option("--csv", cl_csv, "also write n,k,category rows to this file");
  cl->callback([&] { cmd_classify(cl_nmax, cl_budget, cl_seed, cl_thm2, cl_csv, out); });

  // lambda-max
  auto* lm = app.add_subcommand("lambda-max",
                                "largest subtraction weight keeping the map positive");
  int lm_n = 0, lm_k = 0, lm_restarts = 50;
  std::uint64_t lm_seed = 0;
  double lm_phi = 0.0, lm_theta = 0.0;
  double lm_are = 1.0, lm_aim = 0.0, lm_bre = 0.0, lm_bim = 0.0;
  lm->add_option("--n", lm_n)->required();
  lm->add_option("--k", lm_k)->required();
  auto* lm_phi_opt = lm->add_option("--phi", lm_phi, "Bloch azimuth (gcd 3)");
  auto* lm_theta_opt = lm->add_option("--theta", lm_theta, "Bloch polar angle (gcd 3)");
  lm->add_option("--alpha-re", lm_are);
  lm->add_option("--alpha-im", lm_aim);
  lm->add_option("--beta-re", lm_bre);
  lm->add_option("--beta-im", lm_bim);
  lm->add_option("--restarts", lm_restarts, "multistart count M");
  lm->add_option("--seed", lm_seed);
  lm->callback([&] {
    const bool have_bloch = lm_phi_opt->count() > 0 || lm_theta_opt->count() > 0;
    const auto coeffs = resolve_coeffs(lm_n, lm_k, have_bloch, lm_phi, lm_theta,
                                       lm_are, lm_aim, lm_bre, lm_bim);
    SearchSettings settings;
    settings.restarts = lm_restarts;
    settings.seed = lm_seed;
    const LambdaMaxResult r = lambda_max(lm_n, lm_k, coeffs, settings);
    out << lambda_max_json(lm_n, lm_k, coeffs, settings, r).dump() << '\n';
    if (!r.converged) verification.failed = true;
  });

  // scan
  auto* sc = app.add_subcommand("scan", "sweep lambda-max over the Bloch sphere");
  int sc_n = 0, sc_k = 0, sc_phi = 24, sc_theta = 13, sc_restarts = 25;
  std::uint64_t sc_seed = 0;
  std::string sc_ckpt, sc_csv;
  sc->add_option("--n", sc_n)->required();
  sc->add_option("--k", sc_k)->required();
  sc->add_option("--phi-res", sc_phi, "phi resolution (default 24)");
  sc->add_option("--theta-res", sc_theta, "theta resolution (default 13)");
  sc->add_option("--restarts", sc_restarts, "multistart count per point");
  sc->add_option("--seed", sc_seed);
  sc->add_option("--checkpoint", sc_ckpt, "checkpoint JSON path")->required();
  sc->add_option("--export-csv", sc_csv, "write the finished grid as CSV");
  sc->callback([&] {
    SearchSettings settings;
    settings.restarts = sc_restarts;
    settings.seed = sc_seed;
    ScanGrid grid = make_grid(sc_n, sc_k, sc_phi, sc_theta, settings);
    const ScanStats stats =
        scan(grid, sc_ckpt, worker_threads(), [&](int done, int total) {
          err << "scan " << done << "/" << total << "\n";
          return true;
        });
    if (!sc_csv.empty()) export_csv(grid, sc_csv);
    nlohmann::json j;
    j["n"] = sc_n;
    j["k"] = sc_k;
    j["computed"] = stats.computed;
    j["reused"] = stats.reused;
    j["unconverged"] = stats.unconverged;
    j["checkpoint"] = sc_ckpt;
    j["seed"] = sc_seed;
    out << j.dump() << '\n';
    if (stats.unconverged > 0) verification.failed = true;
  });

  // report
  auto* rp = app.add_subcommand("report", "range/symmetry summary of a finished scan");
  std::string rp_ckpt;
  double rp_tol = 0.05;
  std::uint64_t rp_seed = 0;
  rp->add_option("--checkpoint", rp_ckpt)->required();
  rp->add_option("--tol", rp_tol, "range tolerance (default 0.05)");
  rp->add_option("--seed", rp_seed, "echoed in the output");
  rp->callback([&] {
    const ScanGrid grid = load_checkpoint(rp_ckpt);
    const ConjectureReport rep = conjecture_report(grid, rp_tol);
    nlohmann::json j = to_json(rep);
    j["seed"] = rp_seed;
    out << j.dump() << '\n';
    if (!rep.range_ok) verification.failed = true;
  });

  // verify-lemma
  auto* vl = app.add_subcommand("verify-lemma",
                                "sampled lower bounds of the bilinear forms");
  int vl_nmax = 16, vl_samples = 10000;
  std::uint64_t vl_seed = 0;
  vl->add_option("--n-max", vl_nmax, "largest n (default 16)");
  vl->add_option("--samples", vl_samples, "samples per pair (default 10000)");
  vl->add_option("--seed", vl_seed);
  vl->callback([&] {
    for (int n = 4; n <= vl_nmax; n += 2)
      for (int k = 2; k <= n - 2; k += 2)
        for (const auto which : {BilinearMatrix::B, BilinearMatrix::C}) {
          const double bound = -0.25 * n * k;
          const double extremal = extremal_value(n, k, which);
          const double found = bilinear_min_sample(n, k, which, vl_samples,
                                                   derive_seed(vl_seed, n, k));
          const bool ok = found >= bound - 1e-9 && found <= bound + 1e-6 &&
                          extremal == bound;
          nlohmann::json j;
          j["n"] = n;
          j["k"] = k;
          j["matrix"] = which == BilinearMatrix::B ? "B" : "C";
          j["min_found"] = found;
          j["bound"] = bound;
          j["extremal"] = extremal;
          j["ok"] = ok;
          j["samples"] = vl_samples;
          j["seed"] = vl_seed;
          out << j.dump() << '\n';
          if (!ok) verification.failed = true;
        }
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  }
  return verification.failed ? 1 : 0;
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("POSMAP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_guarded(args, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace posmap::cli
