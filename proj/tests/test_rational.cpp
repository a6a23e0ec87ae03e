#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace lexlaurent;
using testutil::Rng;

namespace {

LaurentPolynomial lp(int rank, std::initializer_list<std::pair<ExponentVector, Rat>> items) {
    TermMap m;
    for (const auto& [e, c] : items) m.emplace(e, c);
    return LaurentPolynomial(rank, std::move(m));
}

} // namespace

TEST_CASE("Laurent polynomial arithmetic drops zeros") {
    LaurentPolynomial p = lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}});
    LaurentPolynomial q = lp(2, {{{1, 0}, Rat(-1)}, {{0, 1}, Rat(1)}});
    CHECK((p + q) == lp(2, {{{0, 1}, Rat(2)}}));
    CHECK((p - p) == LaurentPolynomial(2));
    CHECK((p * q) == lp(2, {{{2, 0}, Rat(-1)}, {{0, 2}, Rat(1)}}));
    CHECK(p.min_exponent() == ExponentVector{1, 0});
    CHECK(q.min_coefficient() == Rat(-1));
}

TEST_CASE("expand_rational matches the pinned expansions") {
    const Int n = 8;
    // 1/(x1+x2)
    TruncatedSeries f = expand_rational(LaurentPolynomial::constant(2, Rat(1)),
                                        lp(2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}}), n);
    for (long k = 0; k < 8; ++k)
        CHECK(f.stored_coefficient(ExponentVector{-1 - k, k}) == Rat(k % 2 == 0 ? 1 : -1));
    CHECK_FALSE(f.precision().is_exact());

    // (1 - x1^2)/(1 - x1) divides exactly
    TruncatedSeries g = expand_rational(lp(2, {{{0, 0}, Rat(1)}, {{2, 0}, Rat(-1)}}),
                                        lp(2, {{{0, 0}, Rat(1)}, {{1, 0}, Rat(-1)}}), n);
    CHECK(g.precision().is_exact());
    CHECK(testutil::same_series(
        g, make_series(2, TermMap{{ExponentVector{0, 0}, Rat(1)}, {ExponentVector{1, 0}, Rat(1)}})));

    TruncatedSeries h = expand_rational(LaurentPolynomial::constant(2, Rat(1)),
                                        LaurentPolynomial::monomial(ExponentVector{1, 0}, Rat(1)), n);
    CHECK(h.precision().is_exact());
    CHECK(testutil::same_series(h, TruncatedSeries::monomial(ExponentVector{-1, 0}, Rat(1))));

    CHECK_THROWS_AS(expand_rational(LaurentPolynomial::constant(2, Rat(1)), LaurentPolynomial(2), n),
                    zero_denominator);
    CHECK(expand_rational(LaurentPolynomial(2), lp(2, {{{1, 0}, Rat(1)}}), n).is_exact_zero());
}

TEST_CASE("expansion multiplies back to the numerator") {
    Rng rng(58);
    for (int iter = 0; iter < 120; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        LaurentPolynomial p = testutil::random_laurent(rng, n, 5, 4, false);
        LaurentPolynomial q = testutil::random_laurent(rng, n, 5, 4, true);
        TruncatedSeries e = expand_rational(p, q, Int(12));
        CHECK(equal_up_to(mul(e, to_series(q)), to_series(p), Int(12)));
    }
}

TEST_CASE("expansion is independent of the representative") {
    Rng rng(59);
    for (int iter = 0; iter < 80; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        LaurentPolynomial p = testutil::random_laurent(rng, n, 4, 3, false);
        LaurentPolynomial q = testutil::random_laurent(rng, n, 4, 3, true);
        LaurentPolynomial r = testutil::random_laurent(rng, n, 3, 2, true);
        TruncatedSeries a = expand_rational(p, q, Int(12));
        TruncatedSeries b = expand_rational(p * r, q * r, Int(12));
        CHECK(equal_up_to(a, b, Int(8)));
    }
}

TEST_CASE("expansion valuation is the difference of support minima") {
    Rng rng(60);
    int checked = 0;
    for (int iter = 0; iter < 120; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        LaurentPolynomial p = testutil::random_laurent(rng, n, 4, 3, false);
        LaurentPolynomial q = testutil::random_laurent(rng, n, 4, 3, true);
        if (p.terms().empty()) continue;
        TruncatedSeries e = expand_rational(p, q, Int(12));
        // the leading terms can only cancel against nothing: nu is exact
        Valuation v = valuation(e);
        CHECK(v.exponent == p.min_exponent() - q.min_exponent());
        CHECK(v.coefficient == p.min_coefficient() / q.min_coefficient());
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("expand_form pins the density for both measures") {
    const Int n = 9;
    LogDifferentialForm top = expand_form(
        LaurentPolynomial::constant(2, Rat(1)),
        LaurentPolynomial::monomial(ExponentVector{1, 1}, Rat(1)) *
            lp(2, {{{0, 0}, Rat(1)}, {{1, 0}, Rat(-1)}, {{0, 1}, Rat(-1)}}),
        Measure::TOP, n);
    TruncatedSeries direct = invert(
        make_series(2, TermMap{{ExponentVector{0, 0}, Rat(1)},
                               {ExponentVector{1, 0}, Rat(-1)},
                               {ExponentVector{0, 1}, Rat(-1)}}),
        Precision::window(n));
    CHECK(equal_up_to(top.density, direct, n));
    CHECK(residue(top) == Rat(1));

    LogDifferentialForm plain_top =
        expand_form(LaurentPolynomial::constant(2, Rat(1)), LaurentPolynomial::constant(2, Rat(1)),
                    Measure::TOP, n);
    CHECK(testutil::same_series(plain_top.density,
                                TruncatedSeries::monomial(ExponentVector{1, 1}, Rat(1))));
    CHECK(residue(plain_top) == Rat(0));

    LogDifferentialForm plain_log =
        expand_form(LaurentPolynomial::constant(2, Rat(1)), LaurentPolynomial::constant(2, Rat(1)),
                    Measure::LOG, n);
    CHECK(testutil::same_series(plain_log.density, TruncatedSeries::constant(2, Rat(1))));
    CHECK(residue(plain_log) == Rat(1));
}
