#ifndef CATFLAT_COMON_HPP
#define CATFLAT_COMON_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "catflat/field.hpp"
#include "catflat/flatten.hpp"
#include "catflat/linalg.hpp"
#include "catflat/rng.hpp"

namespace catflat {

/*
 * Outcome of the degree-lifting check for a general rank-h form in n+1
 * variables of degree d:
 *
 *   usual_flattenings        h below the classical catalecticant bound
 *   holds_new_method         the lifted-minor certificate succeeded
 *   even_degree_na           method needs d odd
 *   growth_condition_na      C(n+k, n) < 2 C(n+k-1, n) for k = (d+1)/2
 *   minor_too_large_na       2h-1 exceeds the number of order-k derivatives
 *   determinant_vanished_na  the extracted minor was singular
 */
enum class ComonBranch {
    usual_flattenings,
    holds_new_method,
    even_degree_na,
    growth_condition_na,
    minor_too_large_na,
    determinant_vanished_na,
};

const char* to_string(ComonBranch b);

enum class MinorMode { upper_left, random_rows_cols };

struct ComonOptions {
    FieldSpec field = FieldSpec::rationals();
    unsigned retries = 0; // extra resamples after a vanished determinant
    MinorMode minor = MinorMode::upper_left;
    bool confirm_exact = false; // rationals only: upgrade modular probes to exact
    Exec exec = Exec::automatic;
};

struct ComonVerdict {
    unsigned n = 0, d = 0, h = 0;
    ComonBranch branch = ComonBranch::usual_flattenings;
    std::uint64_t threshold = 0; // C(n + floor(d/2), n)
    unsigned k = 0;              // floor((d+1)/2)
    DetProvenance det_provenance = DetProvenance::not_computed;
    std::uint64_t seed = 0;
    MinorMode minor = MinorMode::upper_left;
    double elapsed_ms = 0.0;
};

/*
 * Decision procedure for Comon's conjecture at (n, d, h). Branches in order:
 * (i) h < C(n+floor(d/2), n): the usual flattening bound applies; (ii) d even:
 * not applicable; (iii) growth condition fails: not applicable; (iv) the
 * (2h-1)-minor does not fit: not applicable; (v) sample F as a sum of h random
 * d-th powers, form G = x0 F, build the order-k catalecticant of G, extract
 * the upper-left (2h-1) x (2h-1) minor and test its determinant.
 *
 * Attempt t of branch (v) draws from sampler.derive(t), t = 0..retries, so a
 * verdict's F is reproducible from its seed alone.
 */
ComonVerdict comon_check(unsigned n, unsigned d, unsigned h, const Sampler& sampler,
                         const ComonOptions& opt = {});

/*
 * One verdict per n in [n_lo, n_hi] at h = C(n + floor(d/2), n), evaluated in
 * parallel; on_verdict (when set) is invoked in increasing order of n as
 * results become ready. Requires d odd.
 */
std::vector<ComonVerdict> comon_sweep(unsigned d, unsigned n_lo, unsigned n_hi,
                                      const Sampler& sampler, const ComonOptions& opt = {},
                                      const std::function<void(const ComonVerdict&)>& on_verdict = {});

} // namespace catflat

#endif
