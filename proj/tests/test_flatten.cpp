#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "catflat/flatten.hpp"
#include "catflat/form.hpp"

using namespace catflat;

namespace {

const Rationals QQ;

QForm qform(unsigned nvars, unsigned degree,
            std::initializer_list<std::pair<ExponentVec, const char*>> terms) {
    QForm f(QQ, nvars, degree);
    for (const auto& [e, c] : terms) f.add_term(e, parse_rational(c));
    return f;
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected a catflat::error");
    return errc::invalid_argument;
}

std::vector<mpq_class> qvec(std::initializer_list<long> v) {
    std::vector<mpq_class> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("catalecticant of x0^2") {
    const auto cat = catalecticant(qform(2, 2, {{{2, 0}, "1"}}), 1);
    REQUIRE(cat.matrix.rows() == 2);
    REQUIRE(cat.matrix.cols() == 2);
    CHECK(cat.matrix(0, 0) == 2);
    CHECK(cat.matrix(0, 1) == 0);
    CHECK(cat.matrix(1, 0) == 0);
    CHECK(cat.matrix(1, 1) == 0);
    CHECK(cat.row_index == monomial_basis(2, 1));
    CHECK(cat.col_index == monomial_basis(2, 1));
}

TEST_CASE("catalecticant shape, order 0, and the index law") {
    const QForm f = qform(3, 3, {{{1, 1, 1}, "4"}, {{3, 0, 0}, "1"}});
    const auto c0 = catalecticant(f, 0);
    CHECK(c0.matrix.rows() == 1);
    CHECK(c0.matrix.cols() == 10);
    CHECK(c0.matrix(0, monomial_index({1, 1, 1}, 3)) == 4);
    CHECK(c0.matrix(0, monomial_index({3, 0, 0}, 3)) == 1);

    const auto c1 = catalecticant(f, 1);
    CHECK(c1.matrix.rows() == 3);
    CHECK(c1.matrix.cols() == 6);
    // Row of d/dx1, column of x0x2: coefficient of x0x2 in 4*x0*x2 is 4.
    CHECK(c1.matrix(1, monomial_index({1, 0, 1}, 2)) == 4);
    // Row of d/dx0, column of x0^2: 3*x0^2 from x0^3.
    CHECK(c1.matrix(0, monomial_index({2, 0, 0}, 2)) == 3);
    CHECK(code_of([&] { catalecticant(f, 4); }) == errc::order_exceeds_degree);
}

TEST_CASE("powers of linear forms have rank-one catalecticants") {
    Sampler rng(11);
    for (unsigned d = 2; d <= 5; ++d) {
        const auto w = random_waring(QQ, rng, 2, d, 1);
        const QForm f = expand(QQ, w, 2, d);
        for (unsigned s = 0; s <= d; ++s) CHECK(rank(catalecticant(f, s).matrix) == 1);
        CHECK(flattening_rank_bound(f) == 1);
    }
}

TEST_CASE("binary forms reduced by hand") {
    CHECK(rank(catalecticant(qform(2, 3, {{{3, 0}, "1"}, {{0, 3}, "1"}}), 1).matrix) == 2);

    const auto xy = catalecticant(qform(2, 2, {{{1, 1}, "1"}}), 1);
    CHECK(xy.matrix(0, 0) == 0);
    CHECK(xy.matrix(0, 1) == 1);
    CHECK(xy.matrix(1, 0) == 1);
    CHECK(xy.matrix(1, 1) == 0);
    CHECK(flattening_rank_bound(qform(2, 2, {{{1, 1}, "1"}})) == 2);
}

TEST_CASE("transpose duality: rank Cat_s = rank Cat_{d-s}") {
    Sampler rng(314159);
    for (int iter = 0; iter < 20; ++iter) {
        const unsigned n = 1 + static_cast<unsigned>(rng.draw_below(3));
        const unsigned d = 2 + static_cast<unsigned>(rng.draw_below(4));
        Sampler draw = rng.derive(iter);
        const QForm f = random_dense_form(QQ, draw, n, d);
        for (unsigned s = 0; s <= d; ++s)
            CHECK(rank(catalecticant(f, s).matrix) == rank(catalecticant(f, d - s).matrix));
    }
}

TEST_CASE("rank-one bound and subadditivity") {
    Sampler rng(2025);
    const unsigned n = 2, d = 4, s = 2;
    for (unsigned h = 1; h <= 5; ++h) {
        Sampler draw = rng.derive(h);
        const auto w = random_waring(QQ, draw, n, d, h);
        const QForm f = expand(QQ, w, n, d);
        CHECK(rank(catalecticant(f, s).matrix) <= h);
    }
    const QForm a = random_dense_form(QQ, rng, n, d);
    const QForm b = random_dense_form(QQ, rng, n, d);
    CHECK(rank(catalecticant(a + b, s).matrix) <=
          rank(catalecticant(a, s).matrix) + rank(catalecticant(b, s).matrix));
}

TEST_CASE("generic saturation: rank Cat_s = min(h, rows, cols)") {
    Sampler rng(808);
    for (int iter = 0; iter < 12; ++iter) {
        const unsigned n = 1 + static_cast<unsigned>(rng.draw_below(3));
        const unsigned d = 2 + static_cast<unsigned>(rng.draw_below(4));
        const unsigned h = 1 + static_cast<unsigned>(rng.draw_below(8));
        Sampler draw = rng.derive(100 + iter);
        const auto w = random_waring(QQ, draw, n, d, h);
        const QForm f = expand(QQ, w, n, d);
        for (unsigned s = 0; s <= d; ++s) {
            const auto cat = catalecticant(f, s);
            const std::size_t expect =
                std::min<std::size_t>(h, std::min(cat.matrix.rows(), cat.matrix.cols()));
            CHECK(rank(cat.matrix) == expect);
        }
    }
}

TEST_CASE("block additivity over disjoint variables") {
    Sampler rng(606);
    for (int iter = 0; iter < 8; ++iter) {
        const unsigned d = 3;
        Sampler draw = rng.derive(iter);
        const auto wf = random_waring(QQ, draw, 1, d, 2);
        const auto wg = random_waring(QQ, draw, 1, d, 2);
        // Embed f in x0,x1 and g in x2,x3 of a 4-variable ambient space.
        WaringExpression<Rationals> ef, eg;
        ef.degree = eg.degree = d;
        for (const auto& s : wf.summands)
            ef.summands.push_back(
                {s.lambda, {s.linear[0], s.linear[1], mpq_class(0), mpq_class(0)}});
        for (const auto& s : wg.summands)
            eg.summands.push_back(
                {s.lambda, {mpq_class(0), mpq_class(0), s.linear[0], s.linear[1]}});
        const QForm f = expand(QQ, ef, 3, d);
        const QForm g = expand(QQ, eg, 3, d);
        for (unsigned s = 1; s < d; ++s)
            CHECK(rank(catalecticant(f + g, s).matrix) ==
                  rank(catalecticant(f, s).matrix) + rank(catalecticant(g, s).matrix));
    }
}

TEST_CASE("serial and parallel catalecticant fills agree") {
    Sampler rng(515);
    const PrimeField fp(kDefaultPrime31);
    const PForm f = random_dense_form(fp, rng, 3, 6);
    const auto a = catalecticant(f, 3, Exec::serial);
    const auto b = catalecticant(f, 3, Exec::parallel);
    CHECK(a.matrix == b.matrix);

    Sampler rq(516);
    const QForm g = random_dense_form(QQ, rq, 2, 5);
    CHECK(catalecticant(g, 2, Exec::serial).matrix == catalecticant(g, 2, Exec::parallel).matrix);
}

TEST_CASE("mixed flattening: single symmetric factor") {
    // lambda * L^d with p = 1 behaves like the catalecticant of a power.
    MixedRankOneTerm<Rationals> t;
    t.lambda = mpq_class(2);
    t.factors.push_back({qvec({1, 1}), 2});
    const QMatrix m = mixed_flattening(QQ, {t}, {{1, 1}});
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    // (x0 + x1)^2 has power coefficients (1, 1) on each side; scaled by 2.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(m(i, j) == 2);
    CHECK(rank(m) == 1);
}

TEST_CASE("mixed flattening: the matrix case recovers matrix rank") {
    // p = 2, d = (1,1): sums of u (x) v are plain matrices of rank h.
    Sampler rng(747);
    for (unsigned h = 1; h <= 4; ++h) {
        std::vector<MixedRankOneTerm<Rationals>> terms;
        for (unsigned t = 0; t < h; ++t) {
            MixedRankOneTerm<Rationals> one;
            one.lambda = mpq_class(1);
            std::vector<mpq_class> u, v;
            for (int i = 0; i < 4; ++i) u.emplace_back(rng.draw_int());
            for (int i = 0; i < 4; ++i) v.emplace_back(rng.draw_int());
            one.factors.push_back({u, 1});
            one.factors.push_back({v, 1});
            terms.push_back(one);
        }
        const QMatrix m = mixed_flattening(QQ, terms, {{1, 0}, {0, 1}});
        CHECK(m.rows() == 4);
        CHECK(m.cols() == 4);
        CHECK(rank(m) == h);
    }
}

TEST_CASE("mixed flattening matches the catalecticant rank for Waring sums") {
    Sampler rng(3131);
    const unsigned n = 2, d = 4, h = 3;
    const auto w = random_waring(QQ, rng, n, d, h);
    std::vector<MixedRankOneTerm<Rationals>> terms;
    for (const auto& s : w.summands) {
        MixedRankOneTerm<Rationals> t;
        t.lambda = s.lambda;
        t.factors.push_back({s.linear, d});
        terms.push_back(t);
    }
    const QForm f = expand(QQ, w, n, d);
    for (unsigned s = 0; s <= d; ++s) {
        const QMatrix m = mixed_flattening(QQ, terms, {{s, d - s}});
        CHECK(m.rows() == dimension_count(n, s));
        CHECK(m.cols() == dimension_count(n, d - s));
        CHECK(rank(m) == rank(catalecticant(f, s).matrix));
    }
}

TEST_CASE("mixed flattening: disjoint blocks add ranks") {
    // Two Segre terms supported on disjoint slots of both factors.
    auto unit = [](int k) {
        std::vector<mpq_class> e(4, mpq_class(0));
        e[static_cast<std::size_t>(k)] = 1;
        return e;
    };
    MixedRankOneTerm<Rationals> t1, t2;
    t1.lambda = t2.lambda = mpq_class(1);
    t1.factors.push_back({unit(0), 1});
    t1.factors.push_back({unit(1), 1});
    t2.factors.push_back({unit(2), 1});
    t2.factors.push_back({unit(3), 1});
    const QMatrix m = mixed_flattening(QQ, {t1, t2}, {{1, 0}, {0, 1}});
    CHECK(rank(m) == 2);
    CHECK(rank(mixed_flattening(QQ, {t1}, {{1, 0}, {0, 1}})) == 1);
    CHECK(rank(mixed_flattening(QQ, {t2}, {{1, 0}, {0, 1}})) == 1);
}

TEST_CASE("mixed flattening split validation") {
    MixedRankOneTerm<Rationals> t;
    t.lambda = mpq_class(1);
    t.factors.push_back({qvec({1, 0}), 2});
    CHECK(code_of([&] { mixed_flattening(QQ, {t}, {{1, 0}}); }) == errc::split_mismatch);
    CHECK(code_of([&] { mixed_flattening(QQ, {t}, {{1, 1}, {0, 0}}); }) == errc::split_mismatch);
    CHECK(code_of([&] { mixed_flattening(QQ, {}, {{1, 1}}); }) == errc::invalid_argument);

    MixedRankOneTerm<Rationals> other = t;
    other.factors[0].degree = 3;
    CHECK(code_of([&] { mixed_flattening(QQ, {t, other}, {{1, 1}}); }) == errc::split_mismatch);
}

TEST_CASE("skew flattening of one decomposable term") {
    // e0 ^ e1 in dimension 3, a = 1: the classical antisymmetric matrix.
    SkewRankOneTerm<Rationals> t;
    t.vectors = {qvec({1, 0, 0}), qvec({0, 1, 0})};
    const QMatrix m = skew_flattening(QQ, {t}, 1, 2, 3);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 1) == 1);
    CHECK(m(1, 0) == -1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(m(i, i) == 0);
    CHECK(m(0, 2) == 0);
    CHECK(m(2, 0) == 0);
    CHECK(rank(m) == 2);
}

TEST_CASE("skew flattening examples from the contraction law") {
    // a = 0: one row of Pluecker coordinates, rank 1.
    SkewRankOneTerm<Rationals> t;
    t.vectors = {qvec({1, 0, 0, 2}), qvec({0, 1, 1, 0})};
    const QMatrix row = skew_flattening(QQ, {t}, 0, 2, 4);
    CHECK(row.rows() == 1);
    CHECK(row.cols() == 6);
    CHECK(rank(row) == 1);

    // e0^e1^e2^e3 in dim 6, a = 2: image is wedge^2 of a 4-space, rank C(4,2).
    SkewRankOneTerm<Rationals> q;
    q.vectors = {qvec({1, 0, 0, 0, 0, 0}), qvec({0, 1, 0, 0, 0, 0}), qvec({0, 0, 1, 0, 0, 0}),
                 qvec({0, 0, 0, 1, 0, 0})};
    CHECK(rank(skew_flattening(QQ, {q}, 2, 4, 6)) == 6);

    // No terms: the zero matrix of the right shape.
    const QMatrix z = skew_flattening(QQ, {}, 1, 2, 3);
    CHECK(z.rows() == 3);
    CHECK(z.cols() == 3);
    CHECK(rank(z) == 0);
}

TEST_CASE("skew flattening validation") {
    SkewRankOneTerm<Rationals> dep;
    dep.vectors = {qvec({1, 1, 0}), qvec({2, 2, 0})};
    CHECK(code_of([&] { skew_flattening(QQ, {dep}, 1, 2, 3); }) == errc::invalid_argument);

    SkewRankOneTerm<Rationals> t;
    t.vectors = {qvec({1, 0, 0}), qvec({0, 1, 0})};
    CHECK(code_of([&] { skew_flattening(QQ, {t}, 3, 2, 3); }) == errc::bad_wedge_degree);
    CHECK(code_of([&] { skew_flattening(QQ, {t}, 1, 4, 3); }) == errc::bad_wedge_degree);
    SkewRankOneTerm<Rationals> wrong = t;
    wrong.vectors.pop_back();
    CHECK(code_of([&] { skew_flattening(QQ, {wrong}, 1, 2, 3); }) == errc::bad_wedge_degree);
}

TEST_CASE("skew flattening of an independent term has rank C(d,a)") {
    Sampler rng(929);
    for (unsigned dim = 2; dim <= 6; ++dim) {
        for (unsigned d = 1; d <= std::min(4u, dim); ++d) {
            SkewRankOneTerm<Rationals> t;
            for (unsigned v = 0; v < d; ++v) {
                std::vector<mpq_class> vec;
                for (unsigned i = 0; i < dim; ++i) vec.emplace_back(rng.draw_int());
                t.vectors.push_back(vec);
            }
            for (unsigned a = 0; a <= d; ++a) {
                const QMatrix m = skew_flattening(QQ, {t}, a, d, dim);
                CHECK(m.rows() == binomial(dim, a));
                CHECK(m.cols() == binomial(dim, d - a));
                CHECK(rank(m) == binomial(d, a));
            }
        }
    }
}

TEST_CASE("skew flattening is alternating in the term vectors") {
    Sampler rng(1618);
    SkewRankOneTerm<Rationals> t;
    for (int v = 0; v < 3; ++v) {
        std::vector<mpq_class> vec;
        for (int i = 0; i < 5; ++i) vec.emplace_back(rng.draw_int());
        t.vectors.push_back(vec);
    }
    SkewRankOneTerm<Rationals> swapped = t;
    std::swap(swapped.vectors[0], swapped.vectors[2]);
    const QMatrix a = skew_flattening(QQ, {t}, 1, 3, 5);
    QMatrix b = skew_flattening(QQ, {swapped}, 1, 3, 5);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = -b(i, j);
    CHECK(a == b);
}
