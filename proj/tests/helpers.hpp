#pragma once

#include <random>
#include <vector>

#include <lexlaurent/lexlaurent.hpp>

namespace testutil {

using namespace lexlaurent;
using Rng = std::mt19937_64;

inline long rnd(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline ExponentVector random_vector(Rng& rng, int n, long lo, long hi) {
    std::vector<Int> e;
    e.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e.emplace_back(rnd(rng, lo, hi));
    return ExponentVector(std::move(e));
}

inline ExponentVector random_lex_positive(Rng& rng, int n, long lo, long hi) {
    while (true) {
        ExponentVector e = random_vector(rng, n, lo, hi);
        if (lex_positive(e)) return e;
    }
}

inline Rat random_rat(Rng& rng, long num_span = 9, long den_span = 4) {
    Int num(rnd(rng, -num_span, num_span));
    if (sgn(num) == 0) num = 1;
    return make_rat(num, Int(rnd(rng, 1, den_span)));
}

// Random series with the given number of support points; window is measured
// from the canonical offset.
inline TruncatedSeries random_series(Rng& rng, int n, int terms, long span, Precision prec) {
    TermMap t;
    for (int i = 0; i < terms; ++i) t.insert_or_assign(random_vector(rng, n, -span, span), random_rat(rng));
    return make_series(n, t, prec);
}

// A unit: nonzero constant term plus a short tail in the standard cone.
inline TruncatedSeries random_unit(Rng& rng, int n, int tail_terms, Precision prec) {
    TermMap t;
    t.emplace(ExponentVector::zero(n), random_rat(rng));
    for (int i = 0; i < tail_terms; ++i) {
        ExponentVector e = random_vector(rng, n, 0, 2);
        if (e.is_zero()) continue;
        t.insert_or_assign(e, random_rat(rng));
    }
    return make_series(n, t, prec);
}

inline LaurentPolynomial random_laurent(Rng& rng, int n, int max_terms, long span, bool force_nonzero) {
    TermMap t;
    const long terms = rnd(rng, force_nonzero ? 1 : 0, max_terms);
    for (long i = 0; i < terms; ++i) t.insert_or_assign(random_vector(rng, n, -span, span), random_rat(rng));
    LaurentPolynomial p(n, std::move(t));
    if (force_nonzero && p.is_zero()) return LaurentPolynomial::constant(n, Rat(1));
    return p;
}

inline SimpleCone random_cone(Rng& rng, int n, long span) {
    IntMatrix g = IntMatrix::identity(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) g.at(i, j) = Int(rnd(rng, -span, span));
    return SimpleCone(std::move(g));
}

// Exact identity of rendered data; both sides canonical by construction.
inline bool same_series(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.offset() == b.offset() && a.precision() == b.precision() && a.terms() == b.terms();
}

} // namespace testutil
