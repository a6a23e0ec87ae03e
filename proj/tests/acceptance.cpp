// Acceptance gate: one line per criterion, process exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace lexlaurent;
using testutil::Rng;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double secs =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] %d. %s (%.2fs, budget %.0fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(), secs,
                budget_seconds, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

bool expect(bool cond, std::string& detail, const char* what) {
    if (!cond && detail.empty()) detail = what;
    return cond;
}

// ---- criterion 1: order and semigroup axioms ----

bool order_suite(std::string& detail) {
    Rng rng(101);
    for (int iter = 0; iter < 10000; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 4));
        ExponentVector a = testutil::random_vector(rng, n, -6, 6);
        ExponentVector b = testutil::rnd(rng, 0, 9) == 0 ? a : testutil::random_vector(rng, n, -6, 6);
        ExponentVector c = testutil::random_vector(rng, n, -6, 6);

        const int ab = lex_compare(a, b);
        const int ba = lex_compare(b, a);
        if (!expect(ab == -ba, detail, "antisymmetry")) return false;
        if (!expect((ab == 0) == (a == b), detail, "trichotomy")) return false;

        const int bc = lex_compare(b, c);
        if (ab <= 0 && bc <= 0 && !expect(lex_compare(a, c) <= 0, detail, "transitivity")) return false;

        if (!expect(lex_compare(a + c, b + c) == ab, detail, "translation invariance")) return false;

        if (lex_positive(a) && lex_positive(b) && !expect(lex_positive(a + b), detail, "positivity closure"))
            return false;

        // isolated subgroups: 0 < b < a forces level(b) <= level(a)
        if (lex_positive(b) && lex_compare(b, a) < 0 &&
            !expect(level(b) <= level(a), detail, "isolated subgroup tower"))
            return false;
    }
    return true;
}

// ---- criterion 2: cone suite ----

bool cone_suite(std::string& detail) {
    Rng rng(102);
    for (int iter = 0; iter < 10000; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 4));
        SimpleCone c = testutil::random_cone(rng, n, 2);
        ExponentVector a = testutil::random_lex_positive(rng, n, -4, 4);

        // covering: every positive lattice point lands in a simple cone
        SimpleCone cover = extend_cone(SimpleCone::standard(n), a);
        if (!expect(cover.contains(a), detail, "covering")) return false;

        SimpleCone e = extend_cone(c, a);
        if (!expect(e.contains(a), detail, "extend_cone contains the point")) return false;
        for (int i = 0; i < n; ++i)
            if (!expect(e.contains(c.generator(i)), detail, "extend_cone keeps the cone")) return false;

        if (iter % 5 == 0) {
            std::vector<ExponentVector> pts;
            for (long j = testutil::rnd(rng, 1, 4); j > 0; --j)
                pts.push_back(testutil::random_lex_positive(rng, n, -4, 4));
            SimpleCone cc = common_cone(pts, SimpleCone::standard(n));
            for (const ExponentVector& p : pts)
                if (!expect(cc.contains(p), detail, "common_cone containment")) return false;

            std::vector<ExponentVector> set;
            for (long j = testutil::rnd(rng, 1, 5); j > 0; --j)
                set.push_back(testutil::random_vector(rng, n, -5, 5));
            MinimalElementResult m = minimal_element(set);
            bool member = false;
            for (const ExponentVector& p : set) {
                member = member || p == m.min;
                if (!expect(lex_compare(m.min, p) <= 0, detail, "minimal element dominates")) return false;
                if (!expect(m.cone.contains(p - m.min), detail, "minimal element cone")) return false;
            }
            if (!expect(member, detail, "minimal element membership")) return false;
        }

        if (iter % 10 == 0) {
            SimpleCone c1 = extend_cone(c, testutil::random_lex_positive(rng, n, -3, 3));
            SimpleCone c2 = extend_cone(c1, testutil::random_lex_positive(rng, n, -3, 3));
            IntMatrix t01 = transition_matrix(c, c1);
            IntMatrix t12 = transition_matrix(c1, c2);
            if (!expect(t12.mul(t01) == transition_matrix(c, c2), detail, "transition composition"))
                return false;
        }
    }
    return true;
}

// ---- criterion 3: non-normal generators against a knapsack oracle ----

bool box_decomposition_matches(const FlagOfLattices& flag, std::string& detail) {
    const int n = flag.rank();
    const SimpleCone std_cone = SimpleCone::standard(n);
    NonNormalCone nc = make_nonnormal_cone(std_cone, flag);
    for (const ExponentVector& g : nc.generating_set)
        if (!expect(semigroup_contains(flag, g), detail, "generator outside the semigroup")) return false;

    const long width = 12;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= width + 1;

    auto decode = [&](long code) {
        std::vector<Int> e(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            e[static_cast<std::size_t>(i)] = code % (width + 1);
            code /= width + 1;
        }
        return ExponentVector(std::move(e));
    };

    // forward-reachability knapsack: generators of the standard cone are
    // componentwise nonnegative, so every decomposition stays inside the box
    std::vector<char> reachable(static_cast<std::size_t>(total), 0);
    reachable[0] = 1;
    for (long code = 0; code < total; ++code) {
        if (!reachable[static_cast<std::size_t>(code)]) continue;
        for (const ExponentVector& g : nc.generating_set) {
            bool in_box = true;
            long out = 0;
            long mult = 1;
            long rest = code;
            for (int i = 0; i < n; ++i) {
                long digit = rest % (width + 1) + to_long_checked(g[i], "box oracle");
                rest /= width + 1;
                if (digit < 0 || digit > width) in_box = false;
                out += digit * mult;
                mult *= width + 1;
            }
            if (in_box) reachable[static_cast<std::size_t>(out)] = 1;
        }
    }

    for (long code = 0; code < total; ++code) {
        ExponentVector a = decode(code);
        const bool member = semigroup_contains(flag, a);
        const bool dec = reachable[static_cast<std::size_t>(code)] != 0;
        if (!expect(member == dec, detail,
                    member ? "semigroup point missed by the generators" : "generators overshoot the semigroup"))
            return false;
    }
    return true;
}

bool nonnormal_suite(std::string& detail) {
    for (long d : {2L, 3L}) {
        IntMatrix b1(1, 1);
        b1.at(0, 0) = d;
        std::map<int, IntMatrix> bases;
        bases.emplace(1, std::move(b1));
        if (!box_decomposition_matches(FlagOfLattices(2, std::move(bases)), detail)) return false;
    }
    Rng rng(103);
    for (int k = 0; k < 2; ++k) {
        const long d1 = testutil::rnd(rng, 2, 3);
        const long d2 = testutil::rnd(rng, 1, 2);
        const long r = testutil::rnd(rng, 0, d1 - 1);
        IntMatrix b1(1, 1);
        b1.at(0, 0) = d1;
        IntMatrix b2(2, 2);
        b2.at(0, 0) = d1;
        b2.at(0, 1) = r;
        b2.at(1, 1) = d2;
        std::map<int, IntMatrix> bases;
        bases.emplace(1, std::move(b1));
        bases.emplace(2, std::move(b2));
        if (!box_decomposition_matches(FlagOfLattices(3, std::move(bases)), detail)) return false;
    }
    return true;
}

// ---- criterion 4: field suite ----

bool field_suite(std::string& detail) {
    Rng rng(104);
    IntMatrix b1(1, 1);
    b1.at(0, 0) = 2;
    std::map<int, IntMatrix> bases;
    bases.emplace(1, std::move(b1));
    const FlagOfLattices flag(2, std::move(bases));

    const Int twelve = 12;
    const Precision w = Precision::window(twelve);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        TruncatedSeries f = testutil::random_series(rng, n, 4, 3, w);
        TruncatedSeries g = testutil::random_series(rng, n, 4, 3, w);
        TruncatedSeries h = testutil::random_series(rng, n, 4, 3, w);

        if (!expect(equal_up_to(add(add(f, g), h), add(f, add(g, h)), twelve), detail, "add associativity"))
            return false;
        if (!expect(equal_up_to(add(f, g), add(g, f), twelve), detail, "add commutativity")) return false;
        if (!expect(equal_up_to(mul(f, g), mul(g, f), twelve), detail, "mul commutativity")) return false;
        if (!expect(equal_up_to(mul(mul(f, g), h), mul(f, mul(g, h)), twelve), detail, "mul associativity"))
            return false;
        if (!expect(equal_up_to(mul(f, add(g, h)), add(mul(f, g), mul(f, h)), twelve), detail,
                    "distributivity"))
            return false;

        TruncatedSeries u = testutil::random_unit(rng, n, 3, w);
        if (!expect(equal_up_to(mul(u, invert(u, w)), TruncatedSeries::constant(n, Rat(1)), twelve), detail,
                    "f * 1/f = 1 + O(12)"))
            return false;

        if (f.has_stored_terms() && g.has_stored_terms()) {
            Valuation vf = valuation(f);
            Valuation vg = valuation(g);
            Valuation vp = valuation(mul(f, g));
            if (!expect(vp.exponent == vf.exponent + vg.exponent, detail, "nu exponents add")) return false;
            if (!expect(vp.coefficient == vf.coefficient * vg.coefficient, detail,
                        "nu leading coefficients multiply"))
                return false;

            TruncatedSeries s = add(f, g);
            const ExponentVector& lo =
                lex_compare(vf.exponent, vg.exponent) <= 0 ? vf.exponent : vg.exponent;
            if (s.has_stored_terms()) {
                if (!expect(lex_compare(lo, valuation(s).exponent) <= 0, detail, "ultrametric inequality"))
                    return false;
                if (vf.exponent != vg.exponent &&
                    !expect(valuation(s).exponent == lo, detail, "ultrametric equality case"))
                    return false;
            }
        }

        if (n == 2) {
            TruncatedSeries a = testutil::random_series(rng, 2, 4, 3, Precision::exact());
            TruncatedSeries b = testutil::random_series(rng, 2, 4, 3, Precision::exact());
            if (supported_in_semigroup(a, flag) && supported_in_semigroup(b, flag)) {
                if (!expect(supported_in_semigroup(add(a, b), flag), detail, "O(L) closed under addition"))
                    return false;
                if (!expect(supported_in_semigroup(mul(a, b), flag), detail, "O(L) closed under product"))
                    return false;
            }
        }
    }
    return true;
}

// ---- criterion 5: residue suite ----

bool residue_suite(std::string& detail) {
    if (!expect(residue(make_log_form(TruncatedSeries::constant(2, Rat(1)))) == Rat(1), detail,
                "res of the torus form"))
        return false;
    if (!expect(residue(make_log_form(TruncatedSeries::monomial(ExponentVector{2, 1}, Rat(1)))) == Rat(0),
                detail, "res of a nonidentity monomial"))
        return false;

    TruncatedSeries d = invert(make_series(2, TermMap{{ExponentVector{0, 0}, Rat(1)},
                                                      {ExponentVector{1, 0}, Rat(-1)},
                                                      {ExponentVector{0, 1}, Rat(-1)}}),
                               Precision::window(Int(10)));
    if (!expect(residue(make_log_form(d)) == Rat(1), detail, "res of 1/(1-x1-x2)")) return false;

    Rng rng(105);
    for (int iter = 0; iter < 150; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        LogDifferentialForm form = make_log_form(testutil::random_series(rng, n, 5, 3, Precision::exact()));
        const Rat direct = residue(form);
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
        do {
            if (!expect(residue_iterated(form, order) == direct, detail, "iterated residue oracle"))
                return false;
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return true;
}

// ---- criterion 6: change-of-variables invariance ----

bool invariance_suite(std::string& detail) {
    Rng rng(106);
    const Precision w = Precision::window(Int(10));
    for (int k = 0; k < 100; ++k) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        std::vector<TruncatedSeries> images;
        for (int i = 0; i < n; ++i) {
            ExponentVector e = ExponentVector::unit(n, i);
            for (int j = 0; j < i; ++j) e[j] = testutil::rnd(rng, 0, 3);
            images.push_back(
                mul(TruncatedSeries::monomial(e, Rat(1)), testutil::random_unit(rng, n, 2, w)));
        }
        const ChangeOfVariables cv(images);
        for (int j = 0; j < 10; ++j) {
            TermMap m;
            for (long t = testutil::rnd(rng, 1, 4); t > 0; --t) {
                std::vector<Int> e;
                for (int i = 0; i < n; ++i) e.emplace_back(testutil::rnd(rng, 0, 2));
                m.emplace(ExponentVector(std::move(e)), testutil::random_rat(rng, 4));
            }
            if (testutil::rnd(rng, 0, 1) == 0) m[ExponentVector::zero(n)] = testutil::random_rat(rng, 4);
            LogDifferentialForm form = make_log_form(make_series(n, m));
            if (!expect(residue(pullback(form, cv, w)) == residue(form), detail,
                        "residue changed under pullback"))
                return false;
        }
    }
    return true;
}

// ---- criterion 7: rational expansion ----

bool rational_suite(std::string& detail) {
    Rng rng(107);
    const Int twelve = 12;
    for (int iter = 0; iter < 200; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        LaurentPolynomial p = testutil::random_laurent(rng, n, 6, 4, false);
        LaurentPolynomial q = testutil::random_laurent(rng, n, 6, 4, true);
        TruncatedSeries e = expand_rational(p, q, twelve);
        if (!expect(equal_up_to(mul(e, to_series(q)), to_series(p), twelve), detail, "multiply-back"))
            return false;

        LaurentPolynomial r = testutil::random_laurent(rng, n, 3, 2, true);
        TruncatedSeries e2 = expand_rational(p * r, q * r, twelve);
        if (!expect(equal_up_to(e, e2, Int(8)), detail, "representative independence")) return false;
    }
    return true;
}

// ---- criterion 8: Puiseux solver ----

bool puiseux_suite(std::string& detail) {
    const TruncatedSeries one = TruncatedSeries::constant(1, Rat(1));
    const TruncatedSeries x1 = TruncatedSeries::monomial(ExponentVector{1}, Rat(1));

    // (a) split quadratic: exact roots 1 and x1
    PolynomialOverSeries split = make_poly({x1, negate(add(one, x1)), one});
    SolveResult sa = solve_roots(split, Int(6));
    if (!expect(sa.roots.size() == 2 && sa.ramification == 1, detail, "split quadratic shape")) return false;
    if (!expect(testutil::same_series(sa.roots[0].series, x1) &&
                    testutil::same_series(sa.roots[1].series, one),
                detail, "split quadratic roots"))
        return false;
    for (const PuiseuxRoot& r : sa.roots)
        if (!expect(evaluate_poly(split, r.series).is_exact_zero(), detail, "split back-substitution"))
            return false;

    // (b) sqrt(1+x1): pinned coefficients, then the squaring oracle
    PolynomialOverSeries sq = make_poly({negate(add(one, x1)), TruncatedSeries::zero(1), one});
    SolveResult sb = solve_roots(sq, Int(5));
    if (!expect(sb.roots.size() == 2, detail, "sqrt root count")) return false;
    const std::vector<Rat> want = {Rat(1), Rat(1, 2), Rat(-1, 8), Rat(1, 16), Rat(-5, 128)};
    for (long k = 0; k < 5; ++k) {
        if (!expect(sb.roots[1].series.stored_coefficient(ExponentVector{k}) ==
                        want[static_cast<std::size_t>(k)],
                    detail, "sqrt coefficients"))
            return false;
        if (!expect(sb.roots[0].series.stored_coefficient(ExponentVector{k}) ==
                        -want[static_cast<std::size_t>(k)],
                    detail, "sqrt negation symmetry"))
            return false;
    }
    for (const PuiseuxRoot& r : sb.roots) {
        TruncatedSeries square = mul(r.series, r.series);
        if (!expect(equal_up_to(square, add(one, x1), Int(5)), detail, "squaring oracle")) return false;
        if (!expect(equal_up_to(evaluate_poly(sq, r.series), TruncatedSeries::zero(1), Int(5)), detail,
                    "sqrt back-substitution"))
            return false;
    }

    // (c) t^2 - x1: ramification 2 = 2!, roots +-z1
    PolynomialOverSeries rad = make_poly({negate(x1), TruncatedSeries::zero(1), one});
    SolveResult sc = solve_roots(rad, Int(4));
    if (!expect(sc.ramification == 2 && sc.roots.size() == 2, detail, "ramified shape")) return false;
    if (!expect(testutil::same_series(sc.roots[1].series, TruncatedSeries::monomial(ExponentVector{1}, Rat(1))) &&
                    testutil::same_series(sc.roots[0].series,
                                          TruncatedSeries::monomial(ExponentVector{1}, Rat(-1))),
                detail, "ramified roots"))
        return false;
    for (const PuiseuxRoot& r : sc.roots)
        if (!expect(evaluate_poly(ramify(rad, r.ramification), r.series).is_exact_zero(), detail,
                    "ramified back-substitution"))
            return false;

    // (d) random two-factor products
    Rng rng(108);
    int recovered = 0;
    for (int iter = 0; iter < 200 && recovered < 20; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 2));
        ExponentVector a = testutil::random_lex_positive(rng, n, -2, 2);
        ExponentVector b = a + testutil::random_lex_positive(rng, n, -2, 2);
        TruncatedSeries h1 = mul(TruncatedSeries::monomial(a, Rat(testutil::rnd(rng, 1, 3))),
                                 testutil::random_unit(rng, n, 2, Precision::window(Int(12))));
        TruncatedSeries h2 = mul(TruncatedSeries::monomial(b, Rat(-testutil::rnd(rng, 1, 3))),
                                 testutil::random_unit(rng, n, 2, Precision::window(Int(12))));
        PolynomialOverSeries g = poly_mul(monic_linear(h1), monic_linear(h2));
        SolveResult s = solve_roots(g, Int(6));
        if (!s.all_slopes_integral) continue;
        if (!expect(s.roots.size() == 2, detail, "two-factor root count")) return false;
        bool f1 = false;
        bool f2 = false;
        for (const PuiseuxRoot& r : s.roots) {
            f1 = f1 || equal_up_to(r.series, h1, Int(6));
            f2 = f2 || equal_up_to(r.series, h2, Int(6));
            if (!expect(equal_up_to(evaluate_poly(g, r.series), TruncatedSeries::zero(n), Int(6)), detail,
                        "two-factor back-substitution"))
                return false;
        }
        if (!expect(f1 && f2, detail, "two-factor recovery")) return false;
        ++recovered;
    }
    return expect(recovered >= 20, detail, "two-factor sample size");
}

// ---- criterion 9: CLI determinism and round trips ----

bool cli_suite(std::string& detail) {
    auto run = [](const std::vector<std::string>& args, int& rc) {
        std::ostringstream out;
        std::ostringstream err;
        rc = run_command(args, out, err);
        return out.str();
    };

    const std::vector<std::pair<std::vector<std::string>, std::string>> pinned = {
        {{"expand", "--n", "2", "--prec", "6", "1/(1-x1)"},
         "1 + x1 + x1^2 + x1^3 + x1^4 + x1^5 + O(6)\n"},
        {{"residue", "--n", "2", "--prec", "8", "--measure", "top", "1/(x1*x2*(1-x1-x2))"}, "1\n"},
        {{"valuation", "--n", "2", "x2 - x1"}, "(1, 0) : -1\n"},
        {{"solve", "--n", "1", "--prec", "5", "t^2 - (1+x1)"},
         "ramification 1\n"
         "-1 - 1/2 x1 + 1/8 x1^2 - 1/16 x1^3 + 5/128 x1^4 + O(5)\n"
         "1 + 1/2 x1 - 1/8 x1^2 + 1/16 x1^3 - 5/128 x1^4 + O(5)\n"},
        {{"solve", "--n", "1", "--prec", "4", "t^2 - x1"}, "ramification 2\n-z1\nz1\n"},
        {{"changevars", "--n", "2", "--prec", "6", "--map", "x1;x2*(1+x1)", "x2^-1"},
         "x2^-1 - x1 x2^-1 + x1^2 x2^-1 - x1^3 x2^-1 + x1^4 x2^-1 - x1^5 x2^-1 + O(6)\n"},
    };
    for (const auto& [args, want] : pinned) {
        int rc1 = -1;
        int rc2 = -1;
        const std::string first = run(args, rc1);
        const std::string second = run(args, rc2);
        if (!expect(rc1 == 0 && rc2 == 0, detail, "pinned command failed")) return false;
        if (!expect(first == want, detail, "pinned output drifted")) return false;
        if (!expect(first == second, detail, "nondeterministic output")) return false;
    }

    Rng rng(109);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = static_cast<int>(testutil::rnd(rng, 1, 3));
        TruncatedSeries f = testutil::random_series(rng, n, 5, 4, Precision::exact());
        const std::string text = format_series(f);
        RationalFunction rf = evaluate_expression(parse_expression(text, n), n).scalar();
        TruncatedSeries back = expand_rational(rf.num(), rf.den(), Int(4));
        if (!expect(testutil::same_series(f, back), detail, "format/parse round trip")) return false;
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "order and semigroup axioms, 10^4 cases", 5, order_suite);
    criterion(2, "cone operations, 10^4 cases", 10, cone_suite);
    criterion(3, "non-normal generators vs knapsack oracle", 30, nonnormal_suite);
    criterion(4, "field axioms and valuation, 200 series", 30, field_suite);
    criterion(5, "residues and iterated residues", 5, residue_suite);
    criterion(6, "residue invariance under 100 changes of variables", 60, invariance_suite);
    criterion(7, "rational expansion multiply-back, 200 instances", 30, rational_suite);
    criterion(8, "Puiseux roots: pinned and random factorizations", 30, puiseux_suite);
    criterion(9, "CLI determinism and round trips", 5, cli_suite);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
