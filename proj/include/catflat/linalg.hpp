#ifndef CATFLAT_LINALG_HPP
#define CATFLAT_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "catflat/matrix.hpp"

namespace catflat {

/// Kernel selection. `automatic` switches to the OpenMP kernels above a size
/// threshold; serial and parallel kernels compute bit-identical results.
enum class Exec { automatic, serial, parallel };

inline constexpr std::size_t kParallelRowThreshold = 48;

/// Exact Bareiss is used up to this size; larger determinants go modular.
inline constexpr std::size_t kBareissAutoMax = 12;

namespace kernels {

/*
 * Fraction-free (Bareiss) elimination over Z, in place on a row-major array.
 * Column skipping handles rank-deficient and rectangular input; divisions by
 * the previous pivot are exact. Returns the rank. If `det` is non-null the
 * array must be square; receives the determinant (0 when singular).
 *
 * The serial kernel is the reference implementation; the parallel kernel
 * distributes row updates with OpenMP and produces identical output.
 */
std::size_t bareiss_serial(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                           mpz_class* det = nullptr);
std::size_t bareiss_parallel(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                             mpz_class* det = nullptr);

/// Gaussian elimination over Z/p, in place. Same contract as the Bareiss pair.
std::size_t mod_echelon_serial(PMatrix& m, std::uint64_t* det = nullptr);
std::size_t mod_echelon_parallel(PMatrix& m, std::uint64_t* det = nullptr);

} // namespace kernels

// -- rank -----------------------------------------------------------------

std::size_t rank(const QMatrix& m, Exec exec = Exec::automatic);
std::size_t rank(const PMatrix& m, Exec exec = Exec::automatic);

// -- determinant ----------------------------------------------------------

enum class DetProvenance {
    exact,                    // exact value over the matrix field
    modular_nonzero,          // nonzero residue at a sampled prime: certified nonzero
    modular_zero_unconfirmed, // zero modulo all sampled primes: probably zero, not certified
    not_computed,
};

const char* to_string(DetProvenance p);

struct DetResult {
    mpq_class value;           // meaningful only when provenance == exact
    DetProvenance provenance = DetProvenance::not_computed;
    std::vector<std::uint64_t> primes; // primes sampled by the modular path
};

enum class DetMode {
    automatic,          // Bareiss up to kBareissAutoMax, modular probes above
    bareiss,            // exact fraction-free elimination
    modular_probe,      // evaluate modulo sampled random primes; never certifies zero
    modular_reconstruct // CRT reconstruction against the Hadamard bound; exact
};

struct DetOptions {
    DetMode mode = DetMode::automatic;
    unsigned probes = 3;       // primes sampled by modular_probe; keep at least 3
    std::uint64_t seed = 1;    // stream for prime sampling, so runs replay
    bool confirm_exact = false; // upgrade a probe outcome to an exact value
    Exec exec = Exec::automatic;
};

/// Exact determinant over Q with the strategy machinery described above.
DetResult determinant(const QMatrix& m, const DetOptions& opt = {});

/// Determinant over Z/p (exact in the field).
std::uint64_t determinant(const PMatrix& m, Exec exec = Exec::automatic);

// -- helpers shared with the conjecture-check layer -----------------------

/// Entrywise reduction mod p; nullopt if p divides some denominator.
std::optional<PMatrix> reduce_mod(const QMatrix& m, const PrimeField& fp);

/// Scale each row by the lcm of its denominators. Returns the integer
/// entries and the total scaling factor s with det(int) = s * det(m).
std::vector<mpz_class> clear_denominators(const QMatrix& m, mpz_class* scale = nullptr);

} // namespace catflat

#endif
