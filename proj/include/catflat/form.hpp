#ifndef CATFLAT_FORM_HPP
#define CATFLAT_FORM_HPP

#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "catflat/field.hpp"
#include "catflat/monomial.hpp"
#include "catflat/rng.hpp"

namespace catflat {

namespace detail {

template <class F>
typename F::Element element_from_mpz(const F& field, const mpz_class& z) {
    if constexpr (F::is_prime_field) {
        std::uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), field.modulus());
        return r;
    } else {
        (void)field;
        return mpq_class(z);
    }
}

inline mpz_class multinomial(unsigned d, const ExponentVec& e) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), d);
    mpz_class f;
    for (unsigned ei : e) {
        mpz_fac_ui(f.get_mpz_t(), ei);
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.get_mpz_t());
    }
    return r;
}

// m_i * (m_i - 1) * ... * (m_i - e_i + 1) over all i: the coefficient picked
// up by the derivative d^e x^m.
inline mpz_class falling_product(const ExponentVec& m, const ExponentVec& e) {
    mpz_class r(1);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned t = 0; t < e[i]; ++t) r *= static_cast<long>(m[i] - t);
    return r;
}

} // namespace detail

/*
 * Sparse homogeneous polynomial of fixed degree in nvars variables.
 * Terms are kept in grlex order and zero coefficients are never stored.
 */
template <class F>
class Form {
public:
    using Field = F;
    using Element = typename F::Element;
    using TermMap = std::map<ExponentVec, Element, GrlexLess>;

    Form(F field, unsigned nvars, unsigned degree)
        : field_(std::move(field)), nvars_(nvars), degree_(degree) {
        if (nvars_ == 0) fail(errc::invalid_argument, "form needs at least one variable");
    }

    const F& field() const noexcept { return field_; }
    unsigned nvars() const noexcept { return nvars_; }
    unsigned degree() const noexcept { return degree_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Accumulate c on the monomial e; erases the term if the sum cancels.
    void add_term(const ExponentVec& e, const Element& c) {
        if (e.size() != nvars_ || total_degree(e) != degree_)
            fail(errc::invalid_argument, "term monomial does not match form shape");
        if (field_.is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Element coeff(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    Form operator+(const Form& o) const {
        require_same_shape(o);
        Form r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    Form scaled(const Element& s) const {
        Form r(field_, nvars_, degree_);
        for (const auto& [e, c] : terms_) r.add_term(e, field_.mul(c, s));
        return r;
    }

    bool operator==(const Form& o) const {
        if (nvars_ != o.nvars_ || degree_ != o.degree_ || terms_.size() != o.terms_.size())
            return false;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        for (; a != terms_.end(); ++a, ++b)
            if (a->first != b->first || !field_.eq(a->second, b->second)) return false;
        return true;
    }

    /// Variable indices with a nonzero exponent somewhere in the support.
    std::vector<unsigned> used_variables() const {
        std::vector<bool> used(nvars_, false);
        for (const auto& [e, c] : terms_)
            for (unsigned i = 0; i < nvars_; ++i)
                if (e[i] > 0) used[i] = true;
        std::vector<unsigned> out;
        for (unsigned i = 0; i < nvars_; ++i)
            if (used[i]) out.push_back(i);
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << field_.to_string(c);
            for (unsigned i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                os << "*x" << i;
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    void require_same_shape(const Form& o) const {
        if (nvars_ != o.nvars_) fail(errc::invalid_argument, "variable count mismatch");
        if (degree_ != o.degree_) fail(errc::degree_mismatch, "degree mismatch");
    }

    F field_;
    unsigned nvars_, degree_;
    TermMap terms_;
};

using QForm = Form<Rationals>;
using PForm = Form<PrimeField>;

/// Waring expression: sum of lambda_i * L_i^degree for linear forms L_i.
template <class F>
struct WaringExpression {
    struct Summand {
        typename F::Element lambda;
        std::vector<typename F::Element> linear; // n+1 coefficients of L_i
    };
    unsigned degree = 0;
    std::vector<Summand> summands;
};

/// x_var * f: degree rises by one, term count is preserved.
template <class F>
Form<F> multiply_by_variable(const Form<F>& f, unsigned var) {
    if (var >= f.nvars()) fail(errc::index_out_of_range, "variable index out of range");
    Form<F> out(f.field(), f.nvars(), f.degree() + 1);
    for (const auto& [e, c] : f.terms()) {
        ExponentVec m = e;
        ++m[var];
        out.add_term(m, c);
    }
    return out;
}

/// d^e f with e the exponent tuple of the differentiation monomial.
template <class F>
Form<F> derivative(const Form<F>& f, const ExponentVec& by) {
    const unsigned order = total_degree(by);
    if (order > f.degree()) fail(errc::order_exceeds_degree, "derivative order exceeds degree");
    Form<F> out(f.field(), f.nvars(), f.degree() - order);
    for (const auto& [m, c] : f.terms()) {
        bool ok = true;
        for (unsigned i = 0; i < f.nvars(); ++i)
            if (m[i] < by[i]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        ExponentVec t(f.nvars());
        for (unsigned i = 0; i < f.nvars(); ++i) t[i] = m[i] - by[i];
        out.add_term(t, f.field().mul(c, detail::element_from_mpz(f.field(),
                                                                  detail::falling_product(m, by))));
    }
    return out;
}

/*
 * All order-s partial derivatives, one per degree-s differentiation monomial,
 * listed in grlex order of those monomials. The list has C(n+s, n) entries of
 * degree d-s each.
 */
template <class F>
std::vector<Form<F>> partial_derivatives(const Form<F>& f, unsigned order) {
    if (order > f.degree()) fail(errc::order_exceeds_degree, "derivative order exceeds degree");
    std::vector<Form<F>> out;
    for (const ExponentVec& e : monomial_basis(f.nvars(), order)) out.push_back(derivative(f, e));
    return out;
}

/// Expand sum lambda_i L_i^d into monomials via the multinomial theorem.
template <class F>
Form<F> expand(const F& field, const WaringExpression<F>& w, unsigned n, unsigned d) {
    for (const auto& s : w.summands)
        if (s.linear.size() != n + 1)
            fail(errc::invalid_argument, "linear form length does not match n+1");
    if (w.degree != d) fail(errc::degree_mismatch, "Waring expression degree mismatch");
    if constexpr (F::is_prime_field) {
        // Every multinomial coefficient of degree d must be a unit.
        if (field.modulus() <= d)
            fail(errc::field_too_small, "prime field too small for degree " + std::to_string(d));
    }
    Form<F> out(field, n + 1, d);
    const auto basis = monomial_basis(n + 1, d);
    for (const auto& s : w.summands) {
        for (const ExponentVec& e : basis) {
            typename F::Element c =
                field.mul(s.lambda, detail::element_from_mpz(field, detail::multinomial(d, e)));
            bool zero = false;
            for (unsigned i = 0; i <= n; ++i) {
                if (e[i] == 0) continue;
                if (field.is_zero(s.linear[i])) {
                    zero = true;
                    break;
                }
                for (unsigned t = 0; t < e[i]; ++t) c = field.mul(c, s.linear[i]);
            }
            if (!zero) out.add_term(e, c);
        }
    }
    return out;
}

/*
 * Random length-h Waring expression: every lambda is 1 and linear coefficients
 * are drawn uniformly from the integers in [-B, B], redrawing any linear form
 * that comes out identically zero. Deterministic in the sampler seed, and the
 * drawn integer stream is field-independent (the same seed gives matching
 * expressions over Q and over any prime field).
 */
template <class F>
WaringExpression<F> random_waring(const F& field, Sampler& rng, unsigned n, unsigned d, unsigned h) {
    if (h < 1) fail(errc::invalid_argument, "Waring length h must be at least 1");
    WaringExpression<F> w;
    w.degree = d;
    w.summands.reserve(h);
    for (unsigned i = 0; i < h; ++i) {
        typename WaringExpression<F>::Summand s;
        s.lambda = field.one();
        for (;;) {
            s.linear.clear();
            bool any = false;
            for (unsigned j = 0; j <= n; ++j) {
                long v = rng.draw_int();
                if (v != 0) any = true;
                s.linear.push_back(field.from_int(v));
            }
            if (any) break;
        }
        w.summands.push_back(std::move(s));
    }
    return w;
}

/// Random form with every coefficient drawn independently: uniform residues
/// over a prime field, uniform integers in [-B, B] over Q.
template <class F>
Form<F> random_dense_form(const F& field, Sampler& rng, unsigned n, unsigned d) {
    Form<F> out(field, n + 1, d);
    for (const ExponentVec& e : monomial_basis(n + 1, d)) {
        if constexpr (F::is_prime_field) {
            out.add_term(e, rng.draw_below(field.modulus()));
        } else {
            out.add_term(e, field.from_int(rng.draw_int()));
        }
    }
    return out;
}

/// Entrywise reduction of a rational form mod p; nullopt when p divides a
/// denominator.
inline std::optional<PForm> reduce_mod(const QForm& f, const PrimeField& fp) {
    PForm out(fp, f.nvars(), f.degree());
    for (const auto& [e, c] : f.terms()) {
        std::uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), fp.modulus());
        if (den == 0) return std::nullopt;
        std::uint64_t num = mpz_fdiv_ui(c.get_num().get_mpz_t(), fp.modulus());
        out.add_term(e, fp.div(num, den));
    }
    return out;
}

} // namespace catflat

#endif
