#include "posmap/serialize.hpp"

namespace posmap {

namespace {
nlohmann::json tri_json(TriState t) {
  switch (t) {
    case TriState::True: return true;
    case TriState::False: return false;
    case TriState::NotRun: return nullptr;
  }
  return nullptr;
}
}  // namespace

nlohmann::json to_json(const SpectrumReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["values"] = r.values;
  j["c_min"] = r.c_min;
  j["c_max"] = r.c_max;
  j["bounds_ok"] = r.bounds_ok.has_value() ? nlohmann::json(*r.bounds_ok)
                                           : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ClassificationRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["gcd"] = r.gcd;
  j["cor1"] = tri_json(r.cor1);
  j["cor2"] = tri_json(r.cor2);
  j["prop"] = tri_json(r.prop);
  j["thm2_numeric"] = tri_json(r.thm2_numeric);
  j["thm2_infimum"] = r.thm2_infimum.has_value()
                          ? nlohmann::json(*r.thm2_infimum)
                          : nlohmann::json(nullptr);
  j["category"] = to_string(r.category);
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  return j;
}

nlohmann::json to_json(const ConjectureReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["observed_min"] = r.observed_min;
  j["observed_max"] = r.observed_max;
  j["range_ok"] = r.range_ok;
  j["pole_value"] = r.pole_value;
  j["equator_value"] = r.equator_value;
  j["symmetry_defect"] = r.symmetry_defect;
  j["tol"] = r.tol;
  j["unconverged"] = r.unconverged;
  return j;
}

nlohmann::json lambda_max_json(int n, int k, const std::vector<Complex>& coeffs,
                               const SearchSettings& settings,
                               const LambdaMaxResult& r) {
  nlohmann::json j;
  j["n"] = n;
  j["k"] = k;
  nlohmann::json cs = nlohmann::json::array();
  for (const Complex& c : coeffs) cs.push_back({c.real(), c.imag()});
  j["coeffs"] = std::move(cs);
  j["lambda_max"] = r.lambda_max;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["final_objective"] = r.final_objective;
  j["witness_x"] = std::vector<double>(r.witness_x.data(),
                                       r.witness_x.data() + r.witness_x.size());
  j["restarts"] = settings.restarts;
  j["seed"] = settings.seed;
  j["newton_tol"] = settings.newton_tol;
  j["zero_band"] = settings.zero_band;
  return j;
}

}  // namespace posmap
