#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "posmap/circulant.hpp"

namespace posmap {

enum class TriState { True, False, NotRun };

enum class Category { COR1, COR2, PROP, THM2, UNRESOLVED };

std::string to_string(Category c);

/// Per-pair verdicts of the analytic positivity certificates and the
/// numeric quadratic-form check, plus the first certificate that fired.
struct ClassificationRecord {
  int n = 0;
  int k = 0;
  int gcd = 0;
  TriState cor1 = TriState::NotRun;
  TriState cor2 = TriState::NotRun;
  TriState prop = TriState::NotRun;
  TriState thm2_numeric = TriState::NotRun;
  std::optional<double> thm2_infimum;
  Category category = Category::UNRESOLVED;
  int budget = 0;
  std::uint64_t seed = 0;
};

/// Window certificate: n in {2k, 2k+2, 2k+4}. Implies the spectral
/// certificate, which is asserted on every call.
bool cor1_holds(int n, int k);

/// Growth certificate: n,k >= 4 and 16n >= 2k^2 + 8(mu+4)k + 4(mu+1) - 27.
/// Implies the spectral certificate, which is asserted on every call.
bool cor2_holds(int n, int k);

/// Spectral certificate: k = 2, or both
///   (n-k+c_min)(n-k+c_max) >= (k/4)(n-2) c_max
///   (n-k+c_min)^2         >= -(k/4)(n-2) c_min
/// with c_min/c_max from c_spectrum.
bool proposition_holds(int n, int k);

/// Orthonormal basis of the zero-sum subspace of R^m as an m x (m-1)
/// matrix (Gram-Schmidt on the differences e_i - e_{i+1}).
Eigen::MatrixXd zero_sum_basis(int m);

/// The degree-4 form whose nonnegativity over zero-sum u,v decides
/// positivity of the optimized even-pair map:
///   (nk/4)(min u)(min v)(u'Au + u'Bv + v'Av + v'Cu) + (u'Au + u'Bv)(v'Av + v'Cu)
double thm2_quartic(int n, int k, const CirculantTriple& t,
                    const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Smallest quartic-form value found by `budget` simplex restarts over the
/// joint unit sphere of the two zero-sum subspaces. A result >= -1e-9
/// certifies the condition numerically; a clearly negative one refutes it.
/// Deterministic for a fixed seed (restart i uses seed + i).
double thm2_infimum(int n, int k, int budget, std::uint64_t seed);

/// Full record for one even pair. The numeric check only runs when
/// with_thm2 is set; it is expensive.
ClassificationRecord classify(int n, int k, int budget, std::uint64_t seed,
                              bool with_thm2 = false);

}  // namespace posmap
