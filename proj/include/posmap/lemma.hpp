#pragma once

#include <cstdint>

#include "posmap/circulant.hpp"
#include "posmap/rng.hpp"

namespace posmap {

enum class BilinearMatrix { B, C };

/// Zero-sum vector of length m with minimum entry exactly -1, sampled by
/// normalizing i.i.d. exponentials to sum m, shifting by -1 and rescaling.
/// The distribution covers the boundary where the bilinear extremals live.
Eigen::VectorXd sample_zero_sum_min_neg1(SplitMix64& rng, int m);

/// a' M b for an extremal zero-sum pair with min = -1 that attains the
/// bilinear lower bound; equals -nk/4 exactly (evaluated in integer
/// arithmetic). For B the spikes sit at positions 0 and n/2-1, for C both
/// sit at position 0, so no shifted power ever pairs the two spikes.
double extremal_value(int n, int k, BilinearMatrix which);

/// Smallest a'b over sampled zero-sum pairs with min = -1. Contract:
/// never below -n/2 - 1e-9.
double pair_min_bound(int n, int samples, std::uint64_t seed);

/// Smallest x' M y found over sampled pairs, the extremal pair (always in
/// the candidate set) and a local refinement of the best candidate.
/// Contract: within [-nk/4 - 1e-9, -nk/4 + 1e-6].
double bilinear_min_sample(int n, int k, BilinearMatrix which, int samples,
                           std::uint64_t seed);

}  // namespace posmap
