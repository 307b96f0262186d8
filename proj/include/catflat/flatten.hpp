#ifndef CATFLAT_FLATTEN_HPP
#define CATFLAT_FLATTEN_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catflat/form.hpp"
#include "catflat/linalg.hpp"
#include "catflat/matrix.hpp"

namespace catflat {

/*
 * Catalecticant of order s: rows are the coefficient vectors of the order-s
 * partial derivatives of f, rows indexed by the degree-s differentiation
 * monomials and columns by the degree d-s monomials, both in grlex order.
 * Entries carry the raw falling-factorial derivative coefficients.
 */
template <class F>
struct Catalecticant {
    Form<F> form;
    unsigned order;
    Matrix<F> matrix;
    std::vector<ExponentVec> row_index; // degree s monomials
    std::vector<ExponentVec> col_index; // degree d-s monomials
};

namespace detail {

// Visit every e <= m with |e| = s (the differentiation monomials hitting m).
template <class Visit>
void visit_bounded_compositions(const ExponentVec& m, unsigned s, unsigned pos, ExponentVec& cur,
                                Visit&& visit) {
    if (pos + 1 == m.size()) {
        if (s <= m[pos]) {
            cur[pos] = s;
            visit(const_cast<const ExponentVec&>(cur));
        }
        return;
    }
    const unsigned top = std::min(s, m[pos]);
    for (unsigned v = 0; v <= top; ++v) {
        cur[pos] = v;
        visit_bounded_compositions(m, s - v, pos + 1, cur, visit);
    }
}

// Each matrix entry (e, m-e) receives exactly one contribution, from the
// unique term monomial m = e + u, so both fill orders build the same matrix.
template <class F>
void fill_catalecticant_serial(const Form<F>& f, unsigned s, Matrix<F>& a) {
    const F& field = f.field();
    const unsigned d = f.degree();
    ExponentVec cur(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        visit_bounded_compositions(m, s, 0, cur, [&](const ExponentVec& e) {
            ExponentVec u(f.nvars());
            for (unsigned i = 0; i < f.nvars(); ++i) u[i] = m[i] - e[i];
            a(monomial_index(e, s), monomial_index(u, d - s)) =
                field.mul(c, element_from_mpz(field, falling_product(m, e)));
        });
    }
}

template <class F>
void fill_catalecticant_parallel(const Form<F>& f, unsigned s,
                                 const std::vector<ExponentVec>& rows, Matrix<F>& a) {
    const F& field = f.field();
    const unsigned d = f.degree();
    const std::vector<std::pair<ExponentVec, typename F::Element>> terms(f.terms().begin(),
                                                                         f.terms().end());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const ExponentVec& e = rows[r];
        for (const auto& [m, c] : terms) {
            bool ok = true;
            for (unsigned i = 0; i < f.nvars(); ++i)
                if (m[i] < e[i]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            ExponentVec u(f.nvars());
            for (unsigned i = 0; i < f.nvars(); ++i) u[i] = m[i] - e[i];
            a(r, monomial_index(u, d - s)) =
                field.mul(c, element_from_mpz(field, falling_product(m, e)));
        }
    }
}

} // namespace detail

template <class F>
Catalecticant<F> catalecticant(const Form<F>& f, unsigned s, Exec exec = Exec::automatic) {
    if (s > f.degree()) fail(errc::order_exceeds_degree, "catalecticant order exceeds degree");
    const unsigned n = f.nvars() - 1, d = f.degree();
    Catalecticant<F> cat{f, s, Matrix<F>(f.field(), dimension_count(n, s), dimension_count(n, d - s)),
                         monomial_basis(f.nvars(), s), monomial_basis(f.nvars(), d - s)};
    const bool parallel = exec == Exec::parallel ||
                          (exec == Exec::automatic && cat.matrix.rows() >= kParallelRowThreshold);
    if (parallel)
        detail::fill_catalecticant_parallel(f, s, cat.row_index, cat.matrix);
    else
        detail::fill_catalecticant_serial(f, s, cat.matrix);
    return cat;
}

/// max_s rank Cat_s(f): a certified lower bound for rank and symmetric rank.
template <class F>
std::size_t flattening_rank_bound(const Form<F>& f) {
    std::size_t best = 0;
    for (unsigned s = 0; s <= f.degree(); ++s)
        best = std::max(best, rank(catalecticant(f, s).matrix));
    return best;
}

// -- mixed tensors --------------------------------------------------------

/// One rank-one summand lambda * L_1^{d_1} x ... x L_p^{d_p} of a mixed tensor.
template <class F>
struct MixedRankOneTerm {
    struct Factor {
        std::vector<typename F::Element> linear; // n_i + 1 coefficients
        unsigned degree;                         // d_i
    };
    typename F::Element lambda;
    std::vector<Factor> factors;
};

namespace detail {

// Coefficient vector of L^a over the degree-a monomial basis.
template <class F>
std::vector<typename F::Element> power_coeffs(const F& field,
                                              const std::vector<typename F::Element>& linear,
                                              unsigned a) {
    const unsigned nvars = static_cast<unsigned>(linear.size());
    std::vector<typename F::Element> out;
    for (const ExponentVec& e : monomial_basis(nvars, a)) {
        typename F::Element c = element_from_mpz(field, multinomial(a, e));
        for (unsigned i = 0; i < nvars; ++i)
            for (unsigned t = 0; t < e[i]; ++t) c = field.mul(c, linear[i]);
        out.push_back(c);
    }
    return out;
}

// Kronecker product of per-factor coefficient vectors; factor 0 is the most
// significant digit of the tuple index.
template <class F>
std::vector<typename F::Element> kron(const F& field,
                                      const std::vector<std::vector<typename F::Element>>& parts) {
    std::vector<typename F::Element> out{field.one()};
    for (const auto& p : parts) {
        std::vector<typename F::Element> next;
        next.reserve(out.size() * p.size());
        for (const auto& x : out)
            for (const auto& y : p) next.push_back(field.mul(x, y));
        out = std::move(next);
    }
    return out;
}

} // namespace detail

/*
 * (A,B)-flattening of a sum of mixed rank-one terms, for the split
 * d_i = a_i + b_i. Rows are indexed by tuples of degree-a_i monomials and
 * columns by tuples of degree-b_i monomials (grlex within a factor,
 * lexicographic across factors); each term contributes the outer product of
 * its A- and B-side power coefficient vectors.
 */
template <class F>
Matrix<F> mixed_flattening(const F& field, const std::vector<MixedRankOneTerm<F>>& terms,
                           const std::vector<std::pair<unsigned, unsigned>>& split) {
    if (terms.empty()) fail(errc::invalid_argument, "mixed flattening needs at least one term");
    const std::size_t p = split.size();
    if (terms.front().factors.size() != p)
        fail(errc::split_mismatch, "split length differs from factor count");
    std::size_t rows = 1, cols = 1;
    for (std::size_t i = 0; i < p; ++i) {
        const auto& f0 = terms.front().factors[i];
        if (split[i].first + split[i].second != f0.degree)
            fail(errc::split_mismatch, "a_i + b_i must equal d_i");
        const unsigned n_i = static_cast<unsigned>(f0.linear.size()) - 1;
        rows *= dimension_count(n_i, split[i].first);
        cols *= dimension_count(n_i, split[i].second);
    }
    for (const auto& t : terms) {
        if (t.factors.size() != p) fail(errc::split_mismatch, "terms disagree on factor count");
        for (std::size_t i = 0; i < p; ++i)
            if (t.factors[i].linear.size() != terms.front().factors[i].linear.size() ||
                t.factors[i].degree != terms.front().factors[i].degree)
                fail(errc::split_mismatch, "terms disagree on factor shapes");
    }

    Matrix<F> m(field, rows, cols);
    for (const auto& t : terms) {
        std::vector<std::vector<typename F::Element>> aparts, bparts;
        for (std::size_t i = 0; i < p; ++i) {
            aparts.push_back(detail::power_coeffs(field, t.factors[i].linear, split[i].first));
            bparts.push_back(detail::power_coeffs(field, t.factors[i].linear, split[i].second));
        }
        const auto u = detail::kron(field, aparts);
        const auto w = detail::kron(field, bparts);
        for (std::size_t r = 0; r < rows; ++r) {
            const typename F::Element lu = field.mul(t.lambda, u[r]);
            if (field.is_zero(lu)) continue;
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = field.add(m(r, c), field.mul(lu, w[c]));
        }
    }
    return m;
}

// -- skew-symmetric tensors -----------------------------------------------

/// Decomposable element v_1 ^ ... ^ v_d of the d-th exterior power.
template <class F>
struct SkewRankOneTerm {
    std::vector<std::vector<typename F::Element>> vectors; // d vectors of length dim
};

namespace detail {

template <class F>
typename F::Element det_dense(const F& field, Matrix<F> m) {
    const std::size_t n = m.rows();
    typename F::Element det = field.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && field.is_zero(m(piv, col))) ++piv;
        if (piv == n) return field.zero();
        if (piv != col) {
            m.swap_rows(piv, col);
            det = field.neg(det);
        }
        det = field.mul(det, m(col, col));
        const typename F::Element inv = field.inv(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (field.is_zero(m(i, col))) continue;
            const typename F::Element fct = field.mul(m(i, col), inv);
            for (std::size_t j = col; j < n; ++j)
                m(i, j) = field.sub(m(i, j), field.mul(fct, m(col, j)));
        }
    }
    return det;
}

inline void subsets_rec(unsigned dim, unsigned k, unsigned start, std::vector<unsigned>& cur,
                        std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (unsigned v = start; v + (k - cur.size()) <= dim; ++v) {
        cur.push_back(v);
        subsets_rec(dim, k, v + 1, cur, out);
        cur.pop_back();
    }
}

/// Strictly increasing k-subsets of {0,...,dim-1} in lexicographic order.
inline std::vector<std::vector<unsigned>> subsets_lex(unsigned dim, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    subsets_rec(dim, k, 0, cur, out);
    return out;
}

inline std::uint64_t subset_mask(const std::vector<unsigned>& s) {
    std::uint64_t m = 0;
    for (unsigned v : s) m |= 1ULL << v;
    return m;
}

// Sign of the shuffle sorting (I, J) into I u J: parity of pairs i > j.
inline int shuffle_sign(const std::vector<unsigned>& i_set, const std::vector<unsigned>& j_set) {
    unsigned inv = 0;
    for (unsigned i : i_set)
        for (unsigned j : j_set)
            if (i > j) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

} // namespace detail

/*
 * Skew-flattening wedge^a V* -> wedge^{d-a} V of a sum of decomposable
 * skew tensors with the wedge bases indexed by increasing index subsets in
 * lexicographic order. Entry (I, J) is eps(I,J) * P_{I u J} for disjoint I, J
 * and 0 otherwise, where P_K are the Pluecker coordinates (maximal minors of
 * the d x dim coordinate matrix) and eps(I,J) the shuffle sign.
 */
template <class F>
Matrix<F> skew_flattening(const F& field, const std::vector<SkewRankOneTerm<F>>& terms, unsigned a,
                          unsigned d, unsigned dim) {
    if (a > d) fail(errc::bad_wedge_degree, "wedge degree a exceeds d");
    if (d > dim) fail(errc::bad_wedge_degree, "wedge degree d exceeds space dimension");
    const auto rows = detail::subsets_lex(dim, a);
    const auto cols = detail::subsets_lex(dim, d - a);
    const auto dsets = detail::subsets_lex(dim, d);
    Matrix<F> m(field, rows.size(), cols.size());

    for (const auto& t : terms) {
        if (t.vectors.size() != d) fail(errc::bad_wedge_degree, "term has wrong wedge degree");
        Matrix<F> coords(field, d, dim);
        for (unsigned i = 0; i < d; ++i) {
            if (t.vectors[i].size() != dim)
                fail(errc::invalid_argument, "vector dimension mismatch");
            for (unsigned j = 0; j < dim; ++j) coords(i, j) = t.vectors[i][j];
        }
        // Pluecker coordinates of the term, keyed by column subset bitmask.
        std::unordered_map<std::uint64_t, typename F::Element> pluecker;
        bool all_zero = true;
        for (const auto& k_set : dsets) {
            Matrix<F> minor(field, d, d);
            for (unsigned i = 0; i < d; ++i)
                for (unsigned j = 0; j < d; ++j) minor(i, j) = coords(i, k_set[j]);
            auto p = detail::det_dense(field, minor);
            if (!field.is_zero(p)) all_zero = false;
            pluecker.emplace(detail::subset_mask(k_set), std::move(p));
        }
        if (all_zero)
            fail(errc::invalid_argument, "skew term vectors are linearly dependent");

        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::uint64_t rmask = detail::subset_mask(rows[r]);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const std::uint64_t cmask = detail::subset_mask(cols[c]);
                if (rmask & cmask) continue;
                const auto& p = pluecker.at(rmask | cmask);
                if (field.is_zero(p)) continue;
                const int sign = detail::shuffle_sign(rows[r], cols[c]);
                m(r, c) = field.add(m(r, c), sign > 0 ? p : field.neg(p));
            }
        }
    }
    return m;
}

} // namespace catflat

#endif
