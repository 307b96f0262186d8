#ifndef CATFLAT_MONOMIAL_HPP
#define CATFLAT_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "catflat/errors.hpp"

namespace catflat {

/// Exponent tuple (e_0, ..., e_n) of a monomial x_0^{e_0} ... x_n^{e_n}.
using ExponentVec = std::vector<unsigned>;

inline unsigned total_degree(const ExponentVec& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

/// C(n+d, n): number of degree-d monomials in n+1 variables.
std::uint64_t dimension_count(unsigned n, unsigned d);

/// C(a, b) as uint64; throws on overflow.
std::uint64_t binomial(unsigned a, unsigned b);

/*
 * Monomial order: graded lexicographic with x_0 > x_1 > ... > x_n.
 * Higher degree first; within a degree, descending lex on exponent tuples,
 * so x_0^d comes first and x_n^d last. Every matrix row/column indexing in
 * this project follows this order.
 */
struct GrlexLess {
    bool operator()(const ExponentVec& a, const ExponentVec& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b; // descending lex within a degree
    }
};

inline bool grlex_before(const ExponentVec& a, const ExponentVec& b) { return GrlexLess{}(a, b); }

/// All degree-d monomials in nvars variables, in grlex order.
std::vector<ExponentVec> monomial_basis(unsigned nvars, unsigned d);

/// Position of a degree-d exponent tuple within monomial_basis(nvars, d).
std::size_t monomial_index(const ExponentVec& e, unsigned d);

} // namespace catflat

#endif
