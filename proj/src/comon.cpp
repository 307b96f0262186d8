#include "catflat/comon.hpp"

#include <chrono>
#include <mutex>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catflat {

const char* to_string(ComonBranch b) {
    switch (b) {
        case ComonBranch::usual_flattenings: return "UsualFlattenings";
        case ComonBranch::holds_new_method: return "HoldsNewMethod";
        case ComonBranch::even_degree_na: return "EvenDegreeNA";
        case ComonBranch::growth_condition_na: return "GrowthConditionNA";
        case ComonBranch::minor_too_large_na: return "MinorTooLargeNA";
        case ComonBranch::determinant_vanished_na: return "DeterminantVanishedNA";
    }
    return "?";
}

namespace {

std::vector<std::size_t> random_distinct_indices(Sampler& rng, std::size_t count, std::size_t range) {
    std::vector<std::size_t> all(range);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i)
        std::swap(all[i], all[i + rng.draw_below(range - i)]);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

// One sampling attempt of branch (v); reports whether the minor determinant
// was (certified) nonzero and with what provenance.
template <class F>
bool branch_v_attempt(const F& field, unsigned n, unsigned d, unsigned h, unsigned k,
                      Sampler rng, const ComonOptions& opt, DetProvenance& prov) {
    const auto w = random_waring(field, rng, n, d, h);
    const Form<F> f = expand(field, w, n, d);
    const Form<F> g = multiply_by_variable(f, 0);
    const auto cat = catalecticant(g, k, opt.exec);
    const std::size_t msize = 2 * static_cast<std::size_t>(h) - 1;

    Matrix<F> minor(field, 0, 0);
    if (opt.minor == MinorMode::upper_left) {
        minor = upper_left_minor(cat.matrix, msize);
    } else {
        const auto ri = random_distinct_indices(rng, msize, cat.matrix.rows());
        const auto ci = random_distinct_indices(rng, msize, cat.matrix.cols());
        minor = submatrix(cat.matrix, ri, ci);
    }

    if constexpr (F::is_prime_field) {
        const std::uint64_t det = determinant(minor, opt.exec);
        prov = det != 0 ? DetProvenance::modular_nonzero : DetProvenance::modular_zero_unconfirmed;
        return det != 0;
    } else {
        DetOptions dopt;
        dopt.seed = rng.raw();
        dopt.confirm_exact = opt.confirm_exact;
        dopt.exec = opt.exec;
        const DetResult res = determinant(minor, dopt);
        prov = res.provenance;
        if (res.provenance == DetProvenance::exact) return res.value != 0;
        return res.provenance == DetProvenance::modular_nonzero;
    }
}

} // namespace

ComonVerdict comon_check(unsigned n, unsigned d, unsigned h, const Sampler& sampler,
                         const ComonOptions& opt) {
    if (n < 1 || d < 2 || h < 1)
        fail(errc::invalid_argument, "comon_check needs n >= 1, d >= 2, h >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    ComonVerdict v;
    v.n = n;
    v.d = d;
    v.h = h;
    v.threshold = binomial(n + d / 2, n);
    v.k = (d + 1) / 2;
    v.seed = sampler.seed();
    v.minor = opt.minor;
    v.det_provenance = DetProvenance::not_computed;

    const auto finish = [&](ComonBranch b) {
        v.branch = b;
        v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                           .count();
        return v;
    };

    if (h < v.threshold) return finish(ComonBranch::usual_flattenings);
    if (d % 2 == 0) return finish(ComonBranch::even_degree_na);
    const std::uint64_t derivs = binomial(n + v.k, n);
    if (derivs < 2 * binomial(n + v.k - 1, n)) return finish(ComonBranch::growth_condition_na);
    if (2 * static_cast<std::uint64_t>(h) - 1 > derivs) return finish(ComonBranch::minor_too_large_na);

    DetProvenance prov = DetProvenance::not_computed;
    for (unsigned attempt = 0; attempt <= opt.retries; ++attempt) {
        const Sampler stream = sampler.derive(attempt);
        bool nonzero;
        if (opt.field.is_prime()) {
            PrimeField fp(opt.field.p);
            nonzero = branch_v_attempt(fp, n, d, h, v.k, stream, opt, prov);
        } else {
            nonzero = branch_v_attempt(Rationals{}, n, d, h, v.k, stream, opt, prov);
        }
        v.det_provenance = prov;
        if (nonzero) return finish(ComonBranch::holds_new_method);
    }
    return finish(ComonBranch::determinant_vanished_na);
}

std::vector<ComonVerdict> comon_sweep(unsigned d, unsigned n_lo, unsigned n_hi,
                                      const Sampler& sampler, const ComonOptions& opt,
                                      const std::function<void(const ComonVerdict&)>& on_verdict) {
    if (d % 2 == 0) fail(errc::invalid_argument, "sweep requires d odd");
    if (n_lo < 1 || n_lo > n_hi) fail(errc::invalid_argument, "bad n range");
    const std::size_t count = n_hi - n_lo + 1;
    std::vector<ComonVerdict> out(count);
    std::vector<bool> done(count, false);
    std::size_t next_emit = 0;
    std::mutex emit_mutex;

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned n = n_lo + static_cast<unsigned>(i);
        const unsigned h = static_cast<unsigned>(binomial(n + d / 2, n));
        ComonVerdict v = comon_check(n, d, h, sampler.derive(n), opt);
        std::lock_guard<std::mutex> lock(emit_mutex);
        out[i] = std::move(v);
        done[i] = true;
        // Emit in order of n regardless of completion order.
        while (next_emit < count && done[next_emit]) {
            if (on_verdict) on_verdict(out[next_emit]);
            ++next_emit;
        }
    }
    return out;
}

} // namespace catflat
