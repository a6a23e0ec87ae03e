#pragma once

#include <optional>
#include <string>
#include <utility>

#include "calculus.hpp"

namespace lexlaurent {

// A finite rational combination of (possibly negative) monomials.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(int rank) : rank_(rank) {
        if (rank < 1) throw rank_error("Laurent polynomial rank must be at least 1");
    }
    LaurentPolynomial(int rank, TermMap terms) : LaurentPolynomial(rank) {
        for (const auto& [e, c] : terms) {
            if (e.rank() != rank_) throw rank_error("Laurent polynomial term rank mismatch");
            if (sgn(c) != 0) terms_.emplace(e, c);
        }
    }

    static LaurentPolynomial constant(int rank, const Rat& c) {
        return monomial(ExponentVector::zero(rank), c);
    }
    static LaurentPolynomial monomial(const ExponentVector& e, const Rat& c) {
        TermMap t;
        if (sgn(c) != 0) t.emplace(e, c);
        return LaurentPolynomial(e.rank(), std::move(t));
    }

    int rank() const { return rank_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Lex-min and lex-max support points of a nonzero polynomial.
    const ExponentVector& min_exponent() const {
        require_nonzero("min exponent");
        return terms_.begin()->first;
    }
    const ExponentVector& max_exponent() const {
        require_nonzero("max exponent");
        return std::prev(terms_.end())->first;
    }
    const Rat& min_coefficient() const {
        require_nonzero("leading coefficient");
        return terms_.begin()->second;
    }

    LaurentPolynomial operator-() const {
        LaurentPolynomial out(rank_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }
    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        a.require_same_rank(b);
        LaurentPolynomial out(a.rank_);
        out.terms_ = a.terms_;
        for (const auto& [e, c] : b.terms_) {
            auto [it, fresh] = out.terms_.try_emplace(e, c);
            if (!fresh) {
                it->second += c;
                if (sgn(it->second) == 0) out.terms_.erase(it);
            }
        }
        return out;
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + (-b); }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        a.require_same_rank(b);
        LaurentPolynomial out(a.rank_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExponentVector e = ea + eb;
                Rat c = ca * cb;
                auto [it, fresh] = out.terms_.try_emplace(std::move(e), std::move(c));
                if (!fresh) {
                    it->second += ca * cb;
                    if (sgn(it->second) == 0) out.terms_.erase(it);
                }
            }
        return out;
    }
    friend LaurentPolynomial operator*(const Rat& c, const LaurentPolynomial& a) {
        LaurentPolynomial out(a.rank_);
        if (sgn(c) != 0)
            for (const auto& [e, v] : a.terms_) out.terms_.emplace(e, c * v);
        return out;
    }
    bool operator==(const LaurentPolynomial& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

private:
    void require_nonzero(const char* what) const {
        if (terms_.empty()) throw argument_error(std::string(what) + " of the zero polynomial is undefined");
    }
    void require_same_rank(const LaurentPolynomial& o) const {
        if (rank_ != o.rank_) throw rank_error("Laurent polynomial rank mismatch");
    }

    int rank_;
    TermMap terms_;
};

inline TruncatedSeries to_series(const LaurentPolynomial& p, Precision prec = Precision::exact()) {
    return make_series(p.rank(), p.terms(), std::move(prec));
}

namespace detail {

// Bottom-up division in lex order: each step cancels the current lex-min of
// the remainder, so the partial quotient is always a subset of the true
// quotient's terms when the division is exact. Newton polytopes add under
// multiplication, so an exact quotient's support fits the componentwise box
// [min(num)-min(den), max(num)-max(den)]; the first step outside that box
// refutes exactness, and strict lex growth inside the finite box bounds the
// number of steps.
inline std::optional<LaurentPolynomial> exact_quotient(const LaurentPolynomial& num, const LaurentPolynomial& den) {
    const int n = num.rank();
    auto extremes = [n](const LaurentPolynomial& p) {
        ExponentVector lo(n);
        ExponentVector hi(n);
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            for (int i = 0; i < n; ++i) {
                if (first || e[i] < lo[i]) lo[i] = e[i];
                if (first || e[i] > hi[i]) hi[i] = e[i];
            }
            first = false;
        }
        return std::pair{lo, hi};
    };
    const auto [num_lo, num_hi] = extremes(num);
    const auto [den_lo, den_hi] = extremes(den);
    const ExponentVector lo = num_lo - den_lo;
    const ExponentVector hi = num_hi - den_hi;

    LaurentPolynomial q(num.rank());
    LaurentPolynomial r = num;
    while (!r.is_zero()) {
        ExponentVector t = r.min_exponent() - den.min_exponent();
        for (int i = 0; i < n; ++i)
            if (t[i] < lo[i] || t[i] > hi[i]) return std::nullopt;
        LaurentPolynomial piece = LaurentPolynomial::monomial(t, r.min_coefficient() / den.min_coefficient());
        q = q + piece;
        r = r - piece * den;
    }
    return q;
}

} // namespace detail

// Expansion of num/den into the series field: the cone comes from den's
// support through the minimal-element recipe inside invert. Exact divisions
// are recognized and returned with exact precision.
inline TruncatedSeries expand_rational(const LaurentPolynomial& num, const LaurentPolynomial& den, const Int& n) {
    if (num.rank() != den.rank()) throw rank_error("expand_rational: rank mismatch");
    if (den.is_zero()) throw zero_denominator("expand_rational: zero denominator");
    if (num.is_zero()) return TruncatedSeries::zero(num.rank());
    if (auto q = detail::exact_quotient(num, den)) return to_series(*q);
    return mul(to_series(num), invert(to_series(den), Precision::window(n)));
}

enum class Measure { LOG, TOP };

// A rational density against the chosen measure. LOG reads h as a multiple
// of the torus volume form; TOP reads h against dx_1 ^ ... ^ dx_n, which is
// x_1...x_n times the volume form.
inline LogDifferentialForm expand_form(const LaurentPolynomial& h_num, const LaurentPolynomial& h_den,
                                       Measure measure, const Int& n) {
    LaurentPolynomial num = h_num;
    if (measure == Measure::TOP) {
        ExponentVector ones(std::vector<Int>(static_cast<std::size_t>(h_num.rank()), Int(1)));
        num = num * LaurentPolynomial::monomial(ones, Rat(1));
    }
    return make_log_form(expand_rational(num, h_den, n));
}

} // namespace lexlaurent
