#include "catflat/field.hpp"

#include <array>

namespace catflat {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for every n < 3.3 * 10^24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t random_prime31(Sampler& rng) {
    const std::uint64_t lo = 1ULL << 30, hi = 1ULL << 31;
    for (;;) {
        std::uint64_t c = lo + 1 + rng.draw_below(hi - lo - 1);
        c |= 1;
        if (c > lo && c < hi && is_prime_u64(c)) return c;
    }
}

FieldSpec parse_field_spec(const std::string& text, unsigned d_max) {
    if (text == "qq" || text == "QQ") return FieldSpec::rationals();
    if (text.rfind("fp:", 0) == 0) {
        try {
            return FieldSpec::prime(std::stoull(text.substr(3)), d_max);
        } catch (const std::logic_error&) {
            fail(errc::invalid_argument, "bad prime in field spec '" + text + "'");
        }
    }
    fail(errc::invalid_argument, "field spec must be 'qq' or 'fp:<p>', got '" + text + "'");
}

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
        fail(errc::invalid_argument, "bad rational literal '" + text + "'");
    if (q.get_den() == 0) fail(errc::invalid_argument, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

} // namespace catflat
