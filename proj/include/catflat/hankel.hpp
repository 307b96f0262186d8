#ifndef CATFLAT_HANKEL_HPP
#define CATFLAT_HANKEL_HPP

#include <vector>

#include "catflat/form.hpp"
#include "catflat/matrix.hpp"

namespace catflat {

/*
 * Coordinates [Z_0, ..., Z_d] of a binary form under the convention
 * F = Z_0 x0^d + ... + C(d, d-i) Z_i x0^{d-i} x1^i + ... + Z_d x1^d,
 * i.e. Z_i = coeff(x0^{d-i} x1^i) / C(d, i).
 */
template <class F>
struct HankelCoords {
    unsigned d = 0;
    std::vector<typename F::Element> z; // length d + 1
};

template <class F>
HankelCoords<F> to_z_coords(const Form<F>& f) {
    if (f.nvars() != 2) fail(errc::invalid_argument, "Z-coordinates are for binary forms");
    const unsigned d = f.degree();
    const F& field = f.field();
    if constexpr (F::is_prime_field) {
        if (field.modulus() <= d)
            fail(errc::field_too_small, "binomial scalings need p > d");
    }
    HankelCoords<F> out{d, {}};
    out.z.reserve(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
        ExponentVec e{d - i, i};
        out.z.push_back(field.div(f.coeff(e), detail::element_from_mpz(field, detail::multinomial(d, e))));
    }
    return out;
}

template <class F>
Form<F> from_z_coords(const F& field, const HankelCoords<F>& h) {
    Form<F> out(field, 2, h.d);
    for (unsigned i = 0; i <= h.d; ++i) {
        ExponentVec e{h.d - i, i};
        out.add_term(e, field.mul(h.z[i], detail::element_from_mpz(field, detail::multinomial(h.d, e))));
    }
    return out;
}

/*
 * The Hankel matrix M_d of a coordinate vector: (n+1) x (n+1) for d = 2n and
 * (n+2) x (n+1) for d = 2n+1, with entry(i, j) = Z_{i+j} (0-based). Its
 * (h+1)-minors cut out the h-secant varieties of the rational normal curve.
 */
template <class F>
Matrix<F> hankel_matrix(const F& field, const HankelCoords<F>& h) {
    const unsigned half = h.d / 2;
    const std::size_t rows = h.d % 2 == 0 ? half + 1 : half + 2;
    const std::size_t cols = half + 1;
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = h.z[i + j];
    return m;
}

/*
 * Coordinate law of multiplication by x0: the degree d+1 coordinates of
 * x0 * F are Z'_i = ((d+1-i)/(d+1)) Z_i for i <= d and Z'_{d+1} = 0.
 */
template <class F>
HankelCoords<F> alpha_lift(const F& field, const HankelCoords<F>& h) {
    const unsigned d = h.d;
    if constexpr (F::is_prime_field) {
        if (field.modulus() <= d + 1)
            fail(errc::field_too_small, "lift needs d+1 invertible");
    }
    HankelCoords<F> out{d + 1, {}};
    out.z.reserve(d + 2);
    const auto denom = field.from_int(static_cast<long>(d) + 1);
    for (unsigned i = 0; i <= d; ++i)
        out.z.push_back(field.div(field.mul(h.z[i], field.from_int(static_cast<long>(d) + 1 - i)), denom));
    out.z.push_back(field.zero());
    return out;
}

} // namespace catflat

#endif
