#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "posmap/positivity.hpp"

namespace posmap {

/// Bloch parametrization of the subtraction coefficients for gcd = 3:
/// alpha = cos(theta/2), beta = e^{i phi} sin(theta/2).
std::pair<Complex, Complex> bloch_coeffs(double phi, double theta);

/// Checkpointable (phi, theta) grid of lambda_max values. phi runs over the
/// half-open uniform grid -pi + 2 pi p / P (so a 2 pi / 3 shift is an exact
/// index rotation whenever 3 | P); theta runs over the closed uniform grid
/// pi t / (T-1) including both poles. Entries are NaN until computed.
struct ScanGrid {
  int n = 0;
  int k = 0;
  std::vector<double> phi_values;
  std::vector<double> theta_values;
  std::vector<double> lambda;  ///< row-major [phi][theta], NaN = pending
  std::vector<signed char> state;  ///< 0 pending, 1 converged, 2 unconverged
  SearchSettings settings;

  int phi_res() const { return static_cast<int>(phi_values.size()); }
  int theta_res() const { return static_cast<int>(theta_values.size()); }
  int index(int p, int t) const { return p * theta_res() + t; }
  bool complete() const;
};

ScanGrid make_grid(int n, int k, int phi_res, int theta_res,
                   const SearchSettings& settings);

struct ScanStats {
  int computed = 0;   ///< lambda_max evaluations performed
  int reused = 0;     ///< points already present in the checkpoint
  int unconverged = 0;
};

/// Progress callback: (points done, total points); return false to stop.
/// A stopped scan leaves the checkpoint valid and resumable.
using ScanProgress = std::function<bool(int, int)>;

/// Fills every pending grid entry with lambda_max(n, k, bloch_coeffs(phi,
/// theta)). The two poles are computed first, once each, and replicated
/// across phi (the projector there does not depend on phi). After every
/// completed point the whole grid is atomically rewritten to
/// checkpoint_path (pass "" to skip checkpointing). If the checkpoint file
/// already exists it is loaded and only still-pending points are computed.
/// Per-point seeds derive from (seed, phi index, theta index), so the
/// result is schedule-independent and deterministic for a fixed seed.
ScanStats scan(ScanGrid& grid, const std::string& checkpoint_path, int threads,
               const ScanProgress& progress = {});

void save_checkpoint(const ScanGrid& grid, const std::string& path);
ScanGrid load_checkpoint(const std::string& path);

/// Canonical JSON serialization of the grid (also the checkpoint format).
std::string grid_to_json_string(const ScanGrid& grid);

/// CSV export, columns phi,theta,lambda_max,converged. Requires a complete
/// grid.
void export_csv(const ScanGrid& grid, const std::string& path);

/// Block-diagonal matrix with n/3 copies of the 3x3 cycle
/// [[0,1,0],[0,0,1],[1,0,0]]; orthogonal, Q^3 = I.
CMatrix q_matrix(int n);

/// Global cyclic relabeling (R x)_i = x_{i+1 mod n}. This is the
/// permutation that conjugates the whole optimized map when beta picks up
/// the phase e^{2 pi i/3}; the block form above satisfies the vector
/// identity but does not commute with the diagonal window for n > 3.
CMatrix rotation_permutation(int n);

/// Residual norm of the displayed vector identity
///   alpha v1 + e^{2 pi i/3} beta v2 = e^{-2 pi i/3} Q (alpha v1 + beta v2).
double verify_rotation_identity(int n, Complex alpha, Complex beta);

struct ConjectureReport {
  int n = 0;
  int k = 0;
  double lo = 0.0;  ///< n - k
  double hi = 0.0;  ///< n - k + (n-3)/(n - 2k/3)
  double observed_min = 0.0;
  double observed_max = 0.0;
  bool range_ok = false;
  double pole_value = 0.0;     ///< grid value at theta = 0
  double equator_value = 0.0;  ///< grid value nearest (phi, theta) = (0, pi/2)
  double symmetry_defect = 0.0;  ///< max |lambda(phi,theta) - lambda(phi+2pi/3,theta)|
  double tol = 0.0;
  int unconverged = 0;
};

/// Range and symmetry summary of a fully computed grid. The phi resolution
/// must be divisible by 3 so the 2 pi/3 shift lands on grid points.
ConjectureReport conjecture_report(const ScanGrid& grid, double tol);

}  // namespace posmap
