#include "vps/synthgen.hpp"

#include <algorithm>
#include <stdexcept>

#include "vps/rng.hpp"

namespace vps {

namespace {

void require_subrange(const Range& r, const char* name) {
    if (!(r.lo >= 0.0 && r.hi <= 1.0 && r.lo <= r.hi)) {
        throw std::invalid_argument(std::string(name) + " range must satisfy 0 <= lo <= hi <= 1");
    }
}

double clip(double v, const Range& r) { return std::min(std::max(v, r.lo), r.hi); }

} // namespace

// Noise draws come from a separate stream derived from the seed, so turning
// noise on does not change which clean samples get drawn.
constexpr std::uint64_t kNoiseStreamSalt = 0x9e3779b97f4a7c15ULL;

Dataset gen_case1(const Case1Params& params, const RhgParams& p, std::uint64_t seed) {
    if (params.n == 0) {
        throw std::invalid_argument("gen_case1: sample count must be at least 1");
    }
    require_subrange(params.phi, "phi");
    require_subrange(params.sh, "sh");
    p.validate();

    Dataset ds({"phi", "sh", "rho"}, {"vp"}, Provenance::Case1, seed);
    ds.reserve(params.n);
    Rng rng(seed);
    Rng noise(seed ^ kNoiseStreamSalt);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double phi = rng.uniform(params.phi.lo, params.phi.hi);
        const double sh = rng.uniform(params.sh.lo, params.sh.hi);
        const double rho = bulk_density(phi, sh, p);
        const double vp = rhg_hydrate_vp(phi, sh, p);
        double in[3] = {phi, sh, rho};
        if (params.noise_sigma > 0.0) {
            for (double& v : in) v += params.noise_sigma * noise.normal();
        }
        const double tgt[1] = {vp};
        ds.push_row(in, tgt);
    }
    return ds;
}

Dataset gen_case2(std::size_t n_per_lith, RhoLawMode mode, std::uint64_t seed,
                  double noise_sigma) {
    if (n_per_lith == 0) {
        throw std::invalid_argument("gen_case2: n_per_lith must be at least 1");
    }
    Dataset ds({"phi", "rho"}, {"vp", "vs"}, Provenance::Case2, seed);
    ds.reserve(n_per_lith * kAllLithologies.size());
    Rng rng(seed);
    Rng noise(seed ^ kNoiseStreamSalt);
    for (Lithology lith : kAllLithologies) {
        const LithologyTransform& t = lithology_transform(lith, mode);
        for (std::size_t i = 0; i < n_per_lith; ++i) {
            const double phi = rng.uniform(t.validity.phi.lo, t.validity.phi.hi);
            const double vp = lith_vp(t, phi);
            const double vs = lith_vs(t, phi);
            const double rho = lith_rho(t, vp);
            double in[2] = {phi, rho};
            if (noise_sigma > 0.0) {
                for (double& v : in) v += noise_sigma * noise.normal();
            }
            const double tgt[2] = {vp, vs};
            ds.push_row(in, tgt);
        }
    }
    return ds;
}

LabeledLog gen_case2_testlog(std::size_t block_len, std::uint64_t seed, RhoLawMode mode) {
    if (block_len == 0) {
        throw std::invalid_argument("gen_case2_testlog: block_len must be at least 1");
    }
    LabeledLog log;
    log.data = gen_case2(block_len, mode, seed);
    log.labels.reserve(log.data.rows());
    for (Lithology lith : kAllLithologies) {
        for (std::size_t i = 0; i < block_len; ++i) {
            log.labels.emplace_back(lithology_name(lith));
        }
    }
    return log;
}

LabeledLog gen_case1_testlog(const Case1LogParams& params, const RhgParams& p,
                             std::uint64_t seed) {
    if (params.n == 0) {
        throw std::invalid_argument("gen_case1_testlog: sample count must be at least 1");
    }
    require_subrange(params.phi, "phi");
    require_subrange(params.sh, "sh");
    if (!(params.phi_step > 0.0) || !(params.sh_step > 0.0)) {
        throw std::invalid_argument("gen_case1_testlog: step bounds must be positive");
    }
    p.validate();

    LabeledLog log;
    log.data = Dataset({"phi", "sh", "rho"}, {"vp"}, Provenance::Case1, seed);
    log.data.reserve(params.n);
    log.labels.reserve(params.n);
    Rng rng(seed);
    double phi = rng.uniform(params.phi.lo, params.phi.hi);
    double sh = rng.uniform(params.sh.lo, params.sh.hi);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double rho = bulk_density(phi, sh, p);
        const double vp = rhg_hydrate_vp(phi, sh, p);
        const double in[3] = {phi, sh, rho};
        const double tgt[1] = {vp};
        log.data.push_row(in, tgt);
        log.labels.push_back(std::to_string(i));
        phi = clip(phi + rng.uniform(-params.phi_step, params.phi_step), params.phi);
        sh = clip(sh + rng.uniform(-params.sh_step, params.sh_step), params.sh);
    }
    return log;
}

} // namespace vps
