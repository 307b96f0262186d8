#ifndef CATFLAT_FIELD_HPP
#define CATFLAT_FIELD_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "catflat/errors.hpp"
#include "catflat/rng.hpp"

namespace catflat {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Random prime in (2^30, 2^31), drawn from the sampler's stream.
std::uint64_t random_prime31(Sampler& rng);

/// Default 31-bit prime used by sweeps and the osculation experiments: 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime31 = 2147483647ULL;

/*
 * The two coefficient fields. Both model the same compile-time interface
 * (Element, zero/one, add/sub/mul/div/neg/inv, is_zero, from_int) so the
 * matrix and polynomial code can be written once and instantiated per field.
 */

/// Arbitrary-precision rational numbers backed by GMP.
class Rationals {
public:
    using Element = mpq_class;
    static constexpr bool is_prime_field = false;

    static Element zero() { return mpq_class(0); }
    static Element one() { return mpq_class(1); }
    static Element from_int(long v) { return mpq_class(v); }

    static Element add(const Element& a, const Element& b) { return a + b; }
    static Element sub(const Element& a, const Element& b) { return a - b; }
    static Element mul(const Element& a, const Element& b) { return a * b; }
    static Element neg(const Element& a) { return -a; }
    static Element inv(const Element& a) {
        if (a == 0) fail(errc::invalid_argument, "inverse of zero");
        return 1 / a;
    }
    static Element div(const Element& a, const Element& b) { return a * inv(b); }
    static bool is_zero(const Element& a) { return a == 0; }
    static bool eq(const Element& a, const Element& b) { return a == b; }
    static std::string to_string(const Element& a) { return a.get_str(); }

    bool operator==(const Rationals&) const { return true; }
};

/*
 * Z/p for an odd prime p < 2^31. Elements are residues in [0, p) stored in a
 * uint64_t, so products fit in 64 bits without intermediate reduction.
 */
class PrimeField {
public:
    using Element = std::uint64_t;
    static constexpr bool is_prime_field = true;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 3 || p >= (1ULL << 31) || !is_prime_u64(p))
            fail(errc::invalid_argument, "PrimeField modulus must be an odd prime < 2^31");
    }

    std::uint64_t modulus() const noexcept { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(long v) const {
        long r = v % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return static_cast<Element>(r);
    }

    Element add(Element a, Element b) const {
        Element s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const {
        if (a == 0) fail(errc::invalid_argument, "inverse of zero");
        return pow(a, p_ - 2);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, std::uint64_t e) const {
        Element r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }
    std::string to_string(Element a) const { return std::to_string(a); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

/*
 * Runtime field selection, as it appears in CLI flags and reports.
 * The construction-time guard p > 2*d_max keeps every multinomial and
 * binomial scaling of degree <= d_max a unit in the field.
 */
struct FieldSpec {
    enum class Kind { rationals, prime } kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }

    static FieldSpec prime(std::uint64_t p, unsigned d_max = 0) {
        PrimeField check(p); // validates primality and range
        if (p <= 2 * static_cast<std::uint64_t>(d_max))
            fail(errc::field_too_small, "prime " + std::to_string(p) +
                                            " does not satisfy p > 2*d_max with d_max = " +
                                            std::to_string(d_max));
        return FieldSpec{Kind::prime, p};
    }

    bool is_prime() const { return kind == Kind::prime; }
    std::string to_string() const {
        return kind == Kind::rationals ? "qq" : "fp:" + std::to_string(p);
    }
};

/// Parse a field flag: "qq" or "fp:<p>".
FieldSpec parse_field_spec(const std::string& text, unsigned d_max = 0);

/// Parse an exact rational literal "p", "-p" or "p/q" into canonical form.
mpq_class parse_rational(const std::string& text);

} // namespace catflat

#endif
