#include "catflat/linalg.hpp"

#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catflat {

namespace kernels {

namespace {

// One Bareiss update of row i against pivot row r, columns (col, cols).
// a[i][j] <- (a[i][j]*pivot - a[i][col]*a[r][j]) / prev, divisions exact.
void bareiss_update_row(std::vector<mpz_class>& a, std::size_t cols, std::size_t r,
                        std::size_t col, std::size_t i, const mpz_class& prev) {
    const mpz_class& pivot = a[r * cols + col];
    mpz_class& head = a[i * cols + col];
    mpz_class t;
    for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class& x = a[i * cols + j];
        t = x * pivot;
        t -= head * a[r * cols + j];
        mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    }
    head = 0;
}

template <bool Parallel>
std::size_t bareiss_impl(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                         mpz_class* det) {
    assert(!det || rows == cols);
    mpz_class prev(1);
    int sign = 1;
    std::size_t r = 0;
    mpz_class last_pivot(1);
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a[p * cols + col] == 0) ++p;
        if (p == rows) continue; // zero column below r: rank deficit here
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
            sign = -sign;
        }
        if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = r + 1; i < rows; ++i) bareiss_update_row(a, cols, r, col, i, prev);
        } else {
            for (std::size_t i = r + 1; i < rows; ++i) bareiss_update_row(a, cols, r, col, i, prev);
        }
        prev = a[r * cols + col];
        last_pivot = prev;
        ++r;
    }
    if (det) {
        // For a full-rank square matrix the final pivot is +-det; any column
        // skip or short rank means a zero determinant.
        if (r == rows && rows > 0)
            *det = sign > 0 ? last_pivot : mpz_class(-last_pivot);
        else if (rows == 0)
            *det = 1;
        else
            *det = 0;
    }
    return r;
}

void mod_update_row(PMatrix& m, std::size_t r, std::size_t col, std::size_t i,
                    std::uint64_t pivot_inv) {
    const PrimeField& f = m.field();
    std::uint64_t head = m(i, col);
    if (head == 0) return;
    std::uint64_t factor = f.mul(head, pivot_inv);
    const std::size_t cols = m.cols();
    for (std::size_t j = col + 1; j < cols; ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    m(i, col) = 0;
}

template <bool Parallel>
std::size_t mod_echelon_impl(PMatrix& m, std::uint64_t* det) {
    assert(!det || m.rows() == m.cols());
    const PrimeField& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::uint64_t d = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && m(p, col) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            m.swap_rows(p, r);
            d = f.neg(d);
        }
        const std::uint64_t pivot_inv = f.inv(m(r, col));
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (std::size_t i = r + 1; i < rows; ++i) mod_update_row(m, r, col, i, pivot_inv);
        } else {
            for (std::size_t i = r + 1; i < rows; ++i) mod_update_row(m, r, col, i, pivot_inv);
        }
        d = f.mul(d, m(r, col));
        ++r;
    }
    if (det) *det = (rows == 0) ? 1 : (r == rows ? d : 0);
    return r;
}

} // namespace

std::size_t bareiss_serial(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                           mpz_class* det) {
    return bareiss_impl<false>(a, rows, cols, det);
}

std::size_t bareiss_parallel(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                             mpz_class* det) {
    return bareiss_impl<true>(a, rows, cols, det);
}

std::size_t mod_echelon_serial(PMatrix& m, std::uint64_t* det) {
    return mod_echelon_impl<false>(m, det);
}

std::size_t mod_echelon_parallel(PMatrix& m, std::uint64_t* det) {
    return mod_echelon_impl<true>(m, det);
}

} // namespace kernels

namespace {

bool use_parallel(Exec exec, std::size_t rows) {
    switch (exec) {
        case Exec::serial: return false;
        case Exec::parallel: return true;
        case Exec::automatic: break;
    }
    return rows >= kParallelRowThreshold;
}

std::size_t bareiss_dispatch(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                             mpz_class* det, Exec exec) {
    return use_parallel(exec, rows) ? kernels::bareiss_parallel(a, rows, cols, det)
                                    : kernels::bareiss_serial(a, rows, cols, det);
}

std::size_t mod_echelon_dispatch(PMatrix& m, std::uint64_t* det, Exec exec) {
    return use_parallel(exec, m.rows()) ? kernels::mod_echelon_parallel(m, det)
                                        : kernels::mod_echelon_serial(m, det);
}

// Deterministic descending prime sequence for CRT reconstruction.
std::uint64_t prev_prime31(std::uint64_t below) {
    std::uint64_t c = below - 1;
    if (c % 2 == 0) --c;
    while (!is_prime_u64(c)) c -= 2;
    return c;
}

std::uint64_t det_mod_of_int(const std::vector<mpz_class>& a, std::size_t n,
                             const PrimeField& fp, Exec exec) {
    PMatrix m(fp, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = mpz_fdiv_ui(a[i * n + j].get_mpz_t(), fp.modulus());
    std::uint64_t d = 0;
    mod_echelon_dispatch(m, &d, exec);
    return d;
}

// |det| <= prod_i ||row_i||_2 (Hadamard); returned as an integer upper bound.
mpz_class hadamard_bound(const std::vector<mpz_class>& a, std::size_t n) {
    mpz_class prod_sq(1);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class s(0);
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        if (s == 0) return mpz_class(0);
        prod_sq *= s;
    }
    mpz_class b;
    mpz_sqrt(b.get_mpz_t(), prod_sq.get_mpz_t());
    return b + 1;
}

mpq_class det_crt_reconstruct(const QMatrix& m, Exec exec) {
    const std::size_t n = m.rows();
    mpz_class scale;
    std::vector<mpz_class> a = clear_denominators(m, &scale);
    mpz_class bound = hadamard_bound(a, n);
    if (bound == 0) return mpq_class(0);

    mpz_class modulus(1), residue(0);
    std::uint64_t p = 1ULL << 31;
    while (modulus <= 2 * bound) {
        p = prev_prime31(p);
        PrimeField fp(p);
        std::uint64_t rp = det_mod_of_int(a, n, fp, exec);
        // CRT: x = residue (mod modulus), x = rp (mod p)
        std::uint64_t rm = mpz_fdiv_ui(residue.get_mpz_t(), p);
        std::uint64_t minv = fp.inv(mpz_fdiv_ui(modulus.get_mpz_t(), p));
        std::uint64_t t = fp.mul(fp.sub(rp, rm), minv);
        residue += modulus * mpz_class(static_cast<unsigned long>(t));
        modulus *= mpz_class(static_cast<unsigned long>(p));
    }
    if (residue * 2 > modulus) residue -= modulus; // symmetric lift
    mpq_class det(residue);
    det /= mpq_class(scale);
    det.canonicalize();
    return det;
}

} // namespace

std::size_t rank(const QMatrix& m, Exec exec) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::vector<mpz_class> a = clear_denominators(m);
    return bareiss_dispatch(a, m.rows(), m.cols(), nullptr, exec);
}

std::size_t rank(const PMatrix& m, Exec exec) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    PMatrix work = m;
    return mod_echelon_dispatch(work, nullptr, exec);
}

const char* to_string(DetProvenance p) {
    switch (p) {
        case DetProvenance::exact: return "Exact";
        case DetProvenance::modular_nonzero: return "ModularNonzero";
        case DetProvenance::modular_zero_unconfirmed: return "ModularZeroUnconfirmed";
        case DetProvenance::not_computed: return "NotComputed";
    }
    return "NotComputed";
}

std::vector<mpz_class> clear_denominators(const QMatrix& m, mpz_class* scale) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> a(rows * cols);
    mpz_class total(1);
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l(1);
        for (std::size_t j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) {
            const mpq_class& q = m(i, j);
            a[i * cols + j] = q.get_num() * (l / q.get_den());
        }
        total *= l;
    }
    if (scale) *scale = total;
    return a;
}

std::optional<PMatrix> reduce_mod(const QMatrix& m, const PrimeField& fp) {
    PMatrix out(fp, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m(i, j);
            std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), fp.modulus());
            if (den == 0) return std::nullopt;
            std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), fp.modulus());
            out(i, j) = fp.div(num, den);
        }
    return out;
}

std::uint64_t determinant(const PMatrix& m, Exec exec) {
    if (m.rows() != m.cols()) fail(errc::non_square, "determinant of non-square matrix");
    if (m.rows() == 0) return 1;
    PMatrix work = m;
    std::uint64_t d = 0;
    mod_echelon_dispatch(work, &d, exec);
    return d;
}

DetResult determinant(const QMatrix& m, const DetOptions& opt) {
    if (m.rows() != m.cols()) fail(errc::non_square, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    DetResult res;

    DetMode mode = opt.mode;
    if (mode == DetMode::automatic)
        mode = n <= kBareissAutoMax ? DetMode::bareiss : DetMode::modular_probe;

    switch (mode) {
        case DetMode::bareiss: {
            mpz_class scale, det_int;
            std::vector<mpz_class> a = clear_denominators(m, &scale);
            bareiss_dispatch(a, n, n, &det_int, opt.exec);
            res.value = mpq_class(det_int) / mpq_class(scale);
            res.value.canonicalize();
            res.provenance = DetProvenance::exact;
            return res;
        }
        case DetMode::modular_reconstruct: {
            res.value = det_crt_reconstruct(m, opt.exec);
            res.provenance = DetProvenance::exact;
            return res;
        }
        case DetMode::modular_probe: {
            Sampler rng(opt.seed);
            bool nonzero = false;
            unsigned used = 0, attempts = 0;
            while (used < opt.probes && attempts++ < 1000) {
                std::uint64_t p = random_prime31(rng);
                PrimeField fp(p);
                auto mp = reduce_mod(m, fp);
                if (!mp) continue; // p divides a denominator: unusable prime
                res.primes.push_back(p);
                ++used;
                std::uint64_t d = 0;
                PMatrix work = *mp;
                mod_echelon_dispatch(work, &d, opt.exec);
                if (d != 0) {
                    nonzero = true;
                    break;
                }
            }
            if (opt.confirm_exact) {
                res.value = det_crt_reconstruct(m, opt.exec);
                res.provenance = DetProvenance::exact;
            } else {
                res.value = 0;
                res.provenance = nonzero ? DetProvenance::modular_nonzero
                                         : DetProvenance::modular_zero_unconfirmed;
            }
            return res;
        }
        case DetMode::automatic: break;
    }
    fail(errc::invalid_argument, "unreachable determinant mode");
}

} // namespace catflat
