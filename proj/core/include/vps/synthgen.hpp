#pragma once

#include <cstdint>

#include "vps/dataset.hpp"
#include "vps/transforms.hpp"

namespace vps {

// Sampling controls for the hydrate-sediment corpus. Ranges are artifact
// defaults spanning all three branches of the velocity-porosity transform.
struct Case1Params {
    std::size_t n = 100'000;
    Range phi{0.30, 0.75};
    Range sh{0.0, 0.80};
    // Optional Gaussian noise added to the stored inputs after the target is
    // computed from the clean values; 0 disables it. The noise uses an
    // independent stream derived from the seed, so enabling it does not
    // change which clean samples are drawn.
    double noise_sigma = 0.0;
};

// Inputs (phi, sh, rho), target vp in m/s. phi and sh are drawn uniformly,
// rho = bulk_density(phi, sh, p), vp = rhg_hydrate_vp(phi, sh, p).
Dataset gen_case1(const Case1Params& params, const RhgParams& p, std::uint64_t seed);

// Inputs (phi, rho), targets (vp, vs) in km/s: n_per_lith samples for each of
// the seven lithologies in table order, phi uniform over each lithology's
// published range, rho derived through the lithology's density law.
Dataset gen_case2(std::size_t n_per_lith, RhoLawMode mode, std::uint64_t seed,
                  double noise_sigma = 0.0);

// Seven contiguous blocks of block_len rows, one per lithology in table
// order, labeled with the lithology name. Use a seed disjoint from any
// training corpus.
LabeledLog gen_case2_testlog(std::size_t block_len, std::uint64_t seed, RhoLawMode mode);

// Depth-correlated stand-in for a measured hydrate well log: phi and sh
// follow clipped random walks, so successive samples differ by at most the
// step bounds. Labels are depth indices.
struct Case1LogParams {
    std::size_t n = 800;
    Range phi{0.30, 0.75};
    Range sh{0.0, 0.80};
    double phi_step = 0.01;
    double sh_step = 0.02;
};

LabeledLog gen_case1_testlog(const Case1LogParams& params, const RhgParams& p,
                             std::uint64_t seed);

} // namespace vps
