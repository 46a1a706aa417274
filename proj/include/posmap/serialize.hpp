#pragma once

#include <json.hpp>

#include "posmap/analytic.hpp"
#include "posmap/bloch.hpp"
#include "posmap/circulant.hpp"
#include "posmap/positivity.hpp"

namespace posmap {

nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const ClassificationRecord& r);
nlohmann::json to_json(const ConjectureReport& r);

/// LambdaMaxResult plus the inputs that produced it, so the output line is
/// reproducible on its own.
nlohmann::json lambda_max_json(int n, int k, const std::vector<Complex>& coeffs,
                               const SearchSettings& settings,
                               const LambdaMaxResult& r);

}  // namespace posmap
