#include "catflat/osculate.hpp"

#include <chrono>

#include "catflat/flatten.hpp"
#include "catflat/form.hpp"

namespace catflat {

const char* to_string(OsculationReport::Outcome o) {
    return o == OsculationReport::Outcome::contained_probabilistically ? "ContainedProbabilistically"
                                                                       : "NotContained";
}

OsculationReport osculating_containment(unsigned n, unsigned d, unsigned s, unsigned trials,
                                        const Sampler& sampler, std::uint64_t prime) {
    if (2 * s != d + 1)
        fail(errc::non_square_catalecticant,
             "Cat_" + std::to_string(s) + " of a degree " + std::to_string(d + 1) +
                 " form is not square");
    const std::size_t size = dimension_count(n, s);
    if (prime <= size << 20)
        fail(errc::field_too_small, "prime must exceed (matrix size) * 2^20");
    PrimeField fp(prime);

    const auto t0 = std::chrono::steady_clock::now();
    OsculationReport rep;
    rep.n = n;
    rep.d = d;
    rep.s = s;
    rep.trials = trials;
    rep.prime = prime;
    rep.matrix_size = size;
    rep.seed = sampler.seed();

    for (unsigned t = 0; t < trials; ++t) {
        Sampler stream = sampler.derive(t);
        const std::uint64_t stream_seed = stream.seed();
        const PForm f = random_dense_form(fp, stream, n, d);
        const PForm g = multiply_by_variable(f, 0);
        const std::uint64_t det = determinant(catalecticant(g, s).matrix);
        if (det != 0) {
            rep.outcome = OsculationReport::Outcome::not_contained;
            rep.witness_seed = stream_seed;
            break;
        }
        ++rep.zero_trials;
    }
    if (rep.zero_trials == trials) rep.outcome = OsculationReport::Outcome::contained_probabilistically;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace catflat
