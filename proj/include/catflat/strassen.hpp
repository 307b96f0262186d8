#ifndef CATFLAT_STRASSEN_HPP
#define CATFLAT_STRASSEN_HPP

#include <cstddef>

#include "catflat/flatten.hpp"

namespace catflat {

struct StrassenWitness {
    unsigned s = 0;
    std::size_t rank_f = 0, rank_g = 0, rank_sum = 0;
    bool additivity_certified = false;
};

/*
 * Rank additivity witness for forms f, g of the same degree supported on
 * disjoint variable blocks of a common ambient set. Computes the order-s
 * catalecticant ranks of f, g and f+g; when rank Cat_s saturates the known
 * symmetric ranks of both summands, srk(f+g) = srk(f) + srk(g) is certified.
 */
template <class F>
StrassenWitness strassen_witness(const Form<F>& f, const Form<F>& g, unsigned s,
                                 std::size_t known_rank_f, std::size_t known_rank_g) {
    if (f.degree() != g.degree()) fail(errc::degree_mismatch, "summands must share a degree");
    if (f.nvars() != g.nvars())
        fail(errc::invalid_argument, "summands must live in a common ambient variable set");
    const auto uf = f.used_variables();
    const auto ug = g.used_variables();
    for (unsigned a : uf)
        for (unsigned b : ug)
            if (a == b)
                fail(errc::variables_not_disjoint,
                     "summands share variable x" + std::to_string(a));

    StrassenWitness w;
    w.s = s;
    w.rank_f = rank(catalecticant(f, s).matrix);
    w.rank_g = rank(catalecticant(g, s).matrix);
    w.rank_sum = rank(catalecticant(f + g, s).matrix);
    // The rank_sum conjunct is automatic for 0 < s < d (the catalecticant of
    // f+g is block-diagonal up to zero rows); it rules out the degenerate
    // single-row/column flattenings where no additivity argument exists.
    w.additivity_certified = (w.rank_f == known_rank_f) && (w.rank_g == known_rank_g) &&
                             (w.rank_sum == w.rank_f + w.rank_g);
    return w;
}

} // namespace catflat

#endif
