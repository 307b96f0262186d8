#include "catflat/monomial.hpp"

namespace catflat {

std::uint64_t binomial(unsigned a, unsigned b) {
    if (b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    if (!r.fits_ulong_p()) fail(errc::overflow, "binomial overflows 64 bits");
    return r.get_ui();
}

std::uint64_t dimension_count(unsigned n, unsigned d) { return binomial(n + d, n); }

namespace {

void enumerate(unsigned nvars, unsigned d, unsigned pos, ExponentVec& cur,
               std::vector<ExponentVec>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (unsigned v = d + 1; v-- > 0;) {
        cur[pos] = v;
        enumerate(nvars, d - v, pos + 1, cur, out);
    }
}

} // namespace

std::vector<ExponentVec> monomial_basis(unsigned nvars, unsigned d) {
    if (nvars == 0) fail(errc::invalid_argument, "monomial basis needs at least one variable");
    std::vector<ExponentVec> out;
    out.reserve(dimension_count(nvars - 1, d));
    ExponentVec cur(nvars, 0);
    enumerate(nvars, d, 0, cur, out);
    return out;
}

std::size_t monomial_index(const ExponentVec& e, unsigned d) {
    // Count the monomials that precede e in grlex: at position i, every choice
    // of a larger exponent v > e_i leaves C(rem-v + k-1, k-1) completions over
    // the remaining k = nvars-1-i variables.
    const unsigned nvars = static_cast<unsigned>(e.size());
    if (total_degree(e) != d) fail(errc::invalid_argument, "exponent degree mismatch");
    std::size_t idx = 0;
    unsigned rem = d;
    for (unsigned i = 0; i + 1 < nvars; ++i) {
        const unsigned k = nvars - 1 - i;
        for (unsigned v = rem; v > e[i]; --v)
            idx += static_cast<std::size_t>(binomial(rem - v + k - 1, k - 1));
        rem -= e[i];
    }
    return idx;
}

} // namespace catflat
