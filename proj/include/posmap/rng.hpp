#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace posmap {

/// Small deterministic PRNG (splitmix64). Results are reproducible across
/// runs and independent of the standard library's distribution internals,
/// which is what makes seed-for-seed bit-identical output possible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in the open interval (0,1).
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// i.i.d. standard normal vector.
  Eigen::VectorXd gaussian(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  /// Random point on the unit sphere in R^dim.
  Eigen::VectorXd unit_vector(int dim) {
    for (;;) {
      Eigen::VectorXd v = gaussian(dim);
      const double nrm = v.norm();
      if (nrm > 1e-12) return v / nrm;
    }
  }

 private:
  std::uint64_t state_;
};

/// Mixes extra words into a seed so that independent work items (grid
/// points, restarts) get decorrelated, schedule-independent streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) {
  SplitMix64 mix(seed ^ (a * 0x9e3779b97f4a7c15ull) ^
                 (b * 0xc2b2ae3d27d4eb4full));
  mix.next();
  return mix.next();
}

}  // namespace posmap
