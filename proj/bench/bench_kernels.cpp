// Timing harness for the serial/OpenMP kernel pairs. Each pair must agree
// bit for bit, so the run doubles as a cross-check and exits nonzero on any
// mismatch.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "catflat/flatten.hpp"
#include "catflat/form.hpp"
#include "catflat/linalg.hpp"

using namespace catflat;

namespace {

int failures = 0;

template <class Fn>
double best_ms(Fn&& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

void row(const char* kernel, const std::string& size, double serial_ms, double parallel_ms,
         bool equal) {
    std::printf("%-24s %-12s %10.2f %10.2f %8.2fx  %s\n", kernel, size.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, equal ? "ok" : "MISMATCH");
    if (!equal) ++failures;
}

void bench_mod_echelon(std::uint64_t seed) {
    const PrimeField fp(kDefaultPrime31);
    for (std::size_t n : {128, 256, 512}) {
        Sampler rng(splitmix64(seed ^ n));
        PMatrix m(fp, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.draw_below(fp.modulus());
        std::uint64_t det_s = 0, det_p = 0;
        std::size_t rank_s = 0, rank_p = 0;
        const double ts = best_ms(
            [&] {
                PMatrix w = m;
                rank_s = kernels::mod_echelon_serial(w, &det_s);
            },
            3);
        const double tp = best_ms(
            [&] {
                PMatrix w = m;
                rank_p = kernels::mod_echelon_parallel(w, &det_p);
            },
            3);
        row("mod_echelon", std::to_string(n) + "x" + std::to_string(n), ts, tp,
            det_s == det_p && rank_s == rank_p);
    }
}

void bench_bareiss(std::uint64_t seed) {
    for (std::size_t n : {32, 64, 96}) {
        Sampler rng(splitmix64(seed ^ (n << 8)));
        std::vector<mpz_class> a(n * n);
        for (auto& x : a) x = rng.draw_int();
        mpz_class det_s, det_p;
        std::size_t rank_s = 0, rank_p = 0;
        const double ts = best_ms(
            [&] {
                auto w = a;
                rank_s = kernels::bareiss_serial(w, n, n, &det_s);
            },
            3);
        const double tp = best_ms(
            [&] {
                auto w = a;
                rank_p = kernels::bareiss_parallel(w, n, n, &det_p);
            },
            3);
        row("bareiss", std::to_string(n) + "x" + std::to_string(n), ts, tp,
            det_s == det_p && rank_s == rank_p);
    }
}

void bench_catalecticant(std::uint64_t seed) {
    const PrimeField fp(kDefaultPrime31);
    struct Case {
        unsigned n, d, s;
    };
    for (const Case c : {Case{4, 8, 4}, Case{5, 8, 4}}) {
        Sampler rng(splitmix64(seed ^ (c.n * 1000 + c.d * 10 + c.s)));
        const PForm f = random_dense_form(fp, rng, c.n, c.d);
        Catalecticant<PrimeField> cat_s = catalecticant(f, c.s, Exec::serial);
        Catalecticant<PrimeField> cat_p = cat_s;
        const double ts = best_ms([&] { cat_s = catalecticant(f, c.s, Exec::serial); }, 3);
        const double tp = best_ms([&] { cat_p = catalecticant(f, c.s, Exec::parallel); }, 3);
        row("catalecticant_fill",
            std::to_string(cat_s.matrix.rows()) + "x" + std::to_string(cat_s.matrix.cols()), ts,
            tp, cat_s.matrix == cat_p.matrix);
    }
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
#ifdef _OPENMP
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; the parallel kernels run serially\n");
#endif
    std::printf("%-24s %-12s %10s %10s %9s\n", "kernel", "size", "serial/ms", "openmp/ms",
                "speedup");
    bench_mod_echelon(seed);
    bench_bareiss(seed);
    bench_catalecticant(seed);
    return failures == 0 ? 0 : 1;
}
