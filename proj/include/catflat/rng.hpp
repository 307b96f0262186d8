#ifndef CATFLAT_RNG_HPP
#define CATFLAT_RNG_HPP

#include <cstdint>
#include <random>

namespace catflat {

/// splitmix64 step; used to derive independent stream seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/*
 * Deterministic coefficient sampler. Two samplers constructed with the same
 * seed and bound produce identical streams; the draw law is pinned so that
 * reports citing a seed are replayable byte for byte:
 *
 *   draw_int()    = (mt19937_64 output mod (2B+1)) - B, an integer in [-B, B]
 *   draw_below(m) = mt19937_64 output mod m
 *
 * The modulo bias is irrelevant at the bounds used here (B ~ 100, m a 31-bit
 * prime) and keeping the law free of rejection loops makes the stream easy to
 * reproduce in other languages.
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed, long coeff_bound = 100)
        : seed_(seed), bound_(coeff_bound), rng_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    long coeff_bound() const noexcept { return bound_; }

    /// Child sampler for an independent parallel stream (e.g. one per n in a sweep).
    Sampler derive(std::uint64_t stream) const {
        return Sampler(splitmix64(seed_ ^ splitmix64(stream)), bound_);
    }

    /// Uniform integer in [-B, B].
    long draw_int() {
        const std::uint64_t m = 2 * static_cast<std::uint64_t>(bound_) + 1;
        return static_cast<long>(rng_() % m) - bound_;
    }

    /// Uniform integer in [0, m).
    std::uint64_t draw_below(std::uint64_t m) { return rng_() % m; }

    std::uint64_t raw() { return rng_(); }

private:
    std::uint64_t seed_;
    long bound_;
    std::mt19937_64 rng_;
};

} // namespace catflat

#endif
