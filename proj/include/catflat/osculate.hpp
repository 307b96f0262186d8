#ifndef CATFLAT_OSCULATE_HPP
#define CATFLAT_OSCULATE_HPP

#include <cstdint>

#include "catflat/field.hpp"
#include "catflat/rng.hpp"

namespace catflat {

/*
 * Polynomial identity test for the containment of the span of { x0 F :
 * deg F = d } inside the catalecticant determinant hypersurface in degree
 * d+1. Each trial samples a dense random degree-d form F over F_p and
 * evaluates det Cat_s(x0 F). All determinants zero is probabilistic evidence
 * of containment (confidence grows with trials and p); a single nonzero
 * determinant is a certificate of non-containment, since a nonzero residue
 * lifts to a nonzero integer determinant.
 */
struct OsculationReport {
    enum class Outcome { contained_probabilistically, not_contained };

    unsigned n = 0, d = 0, s = 0;
    unsigned trials = 0;
    std::uint64_t prime = 0;
    std::size_t matrix_size = 0;
    Outcome outcome = Outcome::contained_probabilistically;
    unsigned zero_trials = 0;          // zero determinants observed
    std::uint64_t seed = 0;            // base seed of the experiment
    std::uint64_t witness_seed = 0;    // derived stream seed of the nonzero trial
    double elapsed_ms = 0.0;
};

const char* to_string(OsculationReport::Outcome o);

OsculationReport osculating_containment(unsigned n, unsigned d, unsigned s, unsigned trials,
                                        const Sampler& sampler,
                                        std::uint64_t prime = kDefaultPrime31);

} // namespace catflat

#endif
