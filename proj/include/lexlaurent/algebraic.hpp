#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lexlaurent {

// g_0 + g_1 t + ... + g_k t^k with series coefficients. The leading
// coefficient must have a defined valuation.
struct PolynomialOverSeries {
    std::vector<TruncatedSeries> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    int rank() const { return coefficients.front().rank(); }
};

inline PolynomialOverSeries make_poly(std::vector<TruncatedSeries> coefficients) {
    while (coefficients.size() > 1 && coefficients.back().is_exact_zero()) coefficients.pop_back();
    if (coefficients.empty()) throw argument_error("polynomial needs at least one coefficient");
    const int n = coefficients.front().rank();
    for (const TruncatedSeries& c : coefficients)
        if (c.rank() != n) throw rank_error("polynomial coefficient rank mismatch");
    if (coefficients.back().is_exact_zero()) throw argument_error("zero polynomial");
    if (!coefficients.back().has_stored_terms())
        throw insufficient_precision("leading polynomial coefficient has no stored terms");
    return {std::move(coefficients)};
}

inline TruncatedSeries evaluate_poly(const PolynomialOverSeries& g, const TruncatedSeries& s) {
    if (g.rank() != s.rank()) throw rank_error("evaluate_poly: rank mismatch");
    TruncatedSeries acc = g.coefficients.back();
    for (int i = g.degree() - 1; i >= 0; --i) acc = add(mul(acc, s), g.coefficients[static_cast<std::size_t>(i)]);
    return acc;
}

inline PolynomialOverSeries derivative_poly(const PolynomialOverSeries& g) {
    if (g.degree() == 0) {
        return {{TruncatedSeries::zero(g.rank())}};
    }
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<std::size_t>(g.degree()));
    for (int i = 1; i <= g.degree(); ++i)
        out.push_back(scalar_mul(Rat(i), g.coefficients[static_cast<std::size_t>(i)]));
    return {std::move(out)};
}

inline PolynomialOverSeries poly_mul(const PolynomialOverSeries& a, const PolynomialOverSeries& b) {
    const int n = a.rank();
    std::vector<TruncatedSeries> out(static_cast<std::size_t>(a.degree() + b.degree()) + 1,
                                     TruncatedSeries::zero(n));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) {
            auto& slot = out[static_cast<std::size_t>(i + j)];
            slot = add(slot, mul(a.coefficients[static_cast<std::size_t>(i)],
                                 b.coefficients[static_cast<std::size_t>(j)]));
        }
    return {std::move(out)};
}

// t - h as a monic linear polynomial.
inline PolynomialOverSeries monic_linear(const TruncatedSeries& h) {
    return {{negate(h), TruncatedSeries::constant(h.rank(), Rat(1))}};
}

// The covering x_i = z_i^N: every exponent vector is scaled by N. The cone
// is unchanged (coordinates scale along with the exponents) and the window
// scales with the degrees.
inline TruncatedSeries ramify(const TruncatedSeries& f, long n) {
    if (n < 1) throw argument_error("ramification index must be positive");
    if (n == 1) return f;
    const Int nn(n);
    TermMap out;
    for (const auto& [e, c] : f.terms()) out.emplace(nn * e, c);
    Precision prec = f.precision();
    if (!prec.is_exact()) prec = Precision::window(prec.value() * nn);
    return TruncatedSeries::with_chart(f.cone(), nn * f.offset(), std::move(prec), std::move(out));
}

inline PolynomialOverSeries ramify(const PolynomialOverSeries& g, long n) {
    std::vector<TruncatedSeries> out;
    out.reserve(g.coefficients.size());
    for (const TruncatedSeries& c : g.coefficients) out.push_back(ramify(c, n));
    return {std::move(out)};
}

// A slope candidate with its leading polynomial: lp(c) = sum over the
// attaining indices i of lc(g_i) c^i.
struct NewtonSlope {
    ExponentVector m;
    std::vector<Rat> leading_poly; // index = power of c
    std::vector<int> attained;
};

struct NewtonSlopesResult {
    std::vector<NewtonSlope> slopes;                      // integral slopes, lex-descending
    std::vector<std::vector<Rat>> requires_ramification;  // non-integral slopes, lex-descending
};

namespace detail {

// Lex comparison on rational vectors, last entry first.
inline int lex_compare_rat(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

} // namespace detail

// Candidate valuations of roots: every m where the minimum over i of
// nu(g_i) + i*m is attained at least twice, collected from pairwise balances.
inline NewtonSlopesResult newton_slopes(const PolynomialOverSeries& g) {
    const int n = g.rank();
    std::vector<std::pair<int, Valuation>> nus; // (index, leading term)
    for (int i = 0; i <= g.degree(); ++i) {
        const TruncatedSeries& c = g.coefficients[static_cast<std::size_t>(i)];
        if (c.is_exact_zero()) continue;
        if (!c.has_stored_terms())
            throw insufficient_precision("newton_slopes: coefficient of t^" + std::to_string(i) +
                                         " has no stored terms");
        nus.emplace_back(i, valuation(c));
    }
    if (nus.size() < 2) throw argument_error("newton_slopes: at least two nonzero coefficients needed");

    std::vector<std::vector<Rat>> candidates;
    for (std::size_t a = 0; a < nus.size(); ++a)
        for (std::size_t b = a + 1; b < nus.size(); ++b) {
            const Rat gap(nus[b].first - nus[a].first);
            std::vector<Rat> m(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r)
                m[static_cast<std::size_t>(r)] =
                    Rat(nus[a].second.exponent[r] - nus[b].second.exponent[r]) / gap;
            candidates.push_back(std::move(m));
        }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return detail::lex_compare_rat(a, b) > 0; });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    NewtonSlopesResult out;
    for (const std::vector<Rat>& m : candidates) {
        std::optional<std::vector<Rat>> best;
        std::vector<int> attained;
        for (const auto& [i, nu] : nus) {
            std::vector<Rat> val(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r)
                val[static_cast<std::size_t>(r)] = Rat(nu.exponent[r]) + Rat(i) * m[static_cast<std::size_t>(r)];
            int c = best ? detail::lex_compare_rat(val, *best) : -1;
            if (c < 0) {
                best = std::move(val);
                attained = {i};
            } else if (c == 0) {
                attained.push_back(i);
            }
        }
        if (attained.size() < 2) continue;

        bool integral = true;
        for (const Rat& q : m)
            if (q.get_den() != 1) {
                integral = false;
                break;
            }
        if (!integral) {
            out.requires_ramification.push_back(m);
            continue;
        }
        std::vector<Int> ent;
        ent.reserve(m.size());
        for (const Rat& q : m) ent.push_back(q.get_num());
        std::vector<Rat> lp(static_cast<std::size_t>(attained.back()) + 1, Rat(0));
        for (const auto& [i, nu] : nus)
            if (std::find(attained.begin(), attained.end(), i) != attained.end())
                lp[static_cast<std::size_t>(i)] = nu.coefficient;
        out.slopes.push_back({ExponentVector(std::move(ent)), std::move(lp), std::move(attained)});
    }
    return out;
}

namespace detail {

// The slope-normalized polynomial: with t = u x^m and mu the minimum of
// nu(g_i) + i m, the equation becomes x^mu * sum_i (g_i x^{im - mu}) u^i.
// The inner polynomial has unit coefficients exactly at the attaining
// indices, so its degree-zero slice is the leading polynomial.
inline PolynomialOverSeries slope_normalize(const PolynomialOverSeries& g, const ExponentVector& m) {
    const int n = g.rank();
    std::optional<ExponentVector> mu;
    for (int i = 0; i <= g.degree(); ++i) {
        const TruncatedSeries& c = g.coefficients[static_cast<std::size_t>(i)];
        if (!c.has_stored_terms()) continue;
        ExponentVector v = valuation(c).exponent + Int(i) * m;
        if (!mu || lex_compare(v, *mu) < 0) mu = std::move(v);
    }
    if (!mu) throw argument_error("slope_normalize: polynomial has no stored coefficients");
    std::vector<TruncatedSeries> out;
    out.reserve(g.coefficients.size());
    for (int i = 0; i <= g.degree(); ++i)
        out.push_back(mul_monomial(g.coefficients[static_cast<std::size_t>(i)], Int(i) * m - *mu, Rat(1)));
    return {std::move(out)};
}

inline long ceil_log2(const Int& n) {
    long k = 0;
    Int p(1);
    while (cmp(p, n) < 0) {
        p *= 2;
        ++k;
    }
    return k;
}

} // namespace detail

// Newton iteration u <- u - G(u)/G'(u) on the slope-normalized equation,
// started from the monomial t0 = c x^m. Quadratic convergence caps the
// iteration count at ceil(log2 N) plus a margin; exact roots exit early.
inline TruncatedSeries hensel_lift(const PolynomialOverSeries& g, const TruncatedSeries& t0, const Int& n_target) {
    const ExponentVector m = valuation(t0).exponent;
    PolynomialOverSeries gh = detail::slope_normalize(g, m);
    PolynomialOverSeries ghd = derivative_poly(gh);
    TruncatedSeries u = mul_monomial(t0, -m, Rat(1));
    const Precision w = Precision::window(n_target);

    TruncatedSeries d0 = evaluate_poly(ghd, u);
    if (d0.is_exact_zero()) throw non_simple_root("hensel_lift: derivative vanishes at the seed");
    if (!d0.has_stored_terms())
        throw insufficient_precision("hensel_lift: derivative at the seed has no stored terms");
    if (!valuation(d0).exponent.is_zero())
        throw non_simple_root("hensel_lift: derivative at the seed is not a unit");

    const long iterations = detail::ceil_log2(n_target) + 2;
    TruncatedSeries r = evaluate_poly(gh, u);
    for (long k = 0; k < iterations; ++k) {
        if (r.is_exact_zero()) break;
        if (!r.has_stored_terms() && !r.precision().is_exact() && cmp(r.precision().value(), n_target) >= 0) break;
        TruncatedSeries d = evaluate_poly(ghd, u);
        u = truncate_to(sub(u, mul(r, invert(d, w))), w);
        r = evaluate_poly(gh, u);
    }
    const TruncatedSeries z = TruncatedSeries::zero(g.rank());
    if (!r.is_exact_zero() && !r.precision().is_exact()) {
        // a window narrower than the target would let the comparison below
        // pass vacuously
        const ExponentVector s = detail::min_offset(r, z);
        const SimpleCone c = detail::common_chart_cone(r.rank(), {&r, &z}, s);
        if (cmp(r.precision().value() + c.degree(r.offset() - s), n_target) < 0)
            throw insufficient_precision("hensel_lift: residual window falls short of the target");
    }
    if (!equal_up_to(r, z, n_target))
        throw insufficient_precision("hensel_lift: residual did not vanish to the target window");
    return mul_monomial(u, m, Rat(1));
}

struct PuiseuxRoot {
    long ramification; // x_i = z_i^ramification
    TruncatedSeries series;
};

struct UnresolvedSlope {
    std::vector<Rat> slope;
    std::string reason;
};

struct SolveResult {
    std::vector<PuiseuxRoot> roots;
    std::vector<UnresolvedSlope> unresolved;
    long ramification = 1;
    bool all_slopes_integral = true;
};

namespace detail {

struct RationalRootsResult {
    std::vector<std::pair<Rat, int>> roots; // (root, multiplicity), ascending
    int residual_degree = 0;                // degree left after removing rational roots
};

inline std::vector<Int> divisors(Int a) {
    a = abs(a);
    std::vector<Int> out;
    for (Int f(1); cmp(f * f, a) <= 0; ++f) {
        if (divides(f, a)) {
            out.push_back(f);
            out.push_back(a / f);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Nonzero rational roots of a rational-coefficient polynomial, with
// multiplicities, by the divisor search on the primitive integer form.
inline RationalRootsResult rational_roots(std::vector<Rat> p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    std::size_t v = 0;
    while (v < p.size() && sgn(p[v]) == 0) ++v;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(v)); // drop c^v: zero is never a leading coefficient
    RationalRootsResult out;
    if (p.size() <= 1) return out;

    Int denom_lcm(1);
    for (const Rat& q : p) denom_lcm = lcm(denom_lcm, Int(q.get_den()));
    std::vector<Int> a;
    a.reserve(p.size());
    for (const Rat& q : p) a.push_back(Int(q.get_num()) * (denom_lcm / Int(q.get_den())));
    Int content(0);
    for (const Int& c : a) content = gcd(content, c);
    for (Int& c : a) c /= content;

    std::set<Rat> candidates;
    for (const Int& num : divisors(a.front()))
        for (const Int& den : divisors(a.back())) {
            candidates.insert(make_rat(num, den));
            candidates.insert(make_rat(-num, den));
        }

    std::vector<Rat> cur(a.begin(), a.end());
    for (const Rat& c : candidates) {
        int mult = 0;
        while (cur.size() > 1) {
            // synthetic division; the popped value is the evaluation at c
            std::vector<Rat> q(cur.size() - 1);
            Rat carry = cur.back();
            for (std::size_t i = cur.size() - 1; i-- > 0;) {
                q[i] = carry;
                carry = cur[i] + c * carry;
            }
            if (sgn(carry) != 0) break;
            cur = std::move(q);
            ++mult;
        }
        if (mult > 0) out.roots.emplace_back(c, mult);
    }
    out.residual_degree = static_cast<int>(cur.size()) - 1;
    return out;
}

inline long factorial_checked(int k) {
    Int f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return to_long_checked(f, "ramification index");
}

inline std::string format_slope(const std::vector<Rat>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ", ";
        s += m[i].get_str();
    }
    return s + ")";
}

} // namespace detail

// Roots of g as Puiseux series: ramify until the slopes are integral (k!
// always suffices; unramified inputs with integral slopes stay unramified),
// pick the rational simple roots of each leading polynomial, and lift each
// one. Everything else is reported, not dropped.
inline SolveResult solve_roots(const PolynomialOverSeries& g, const Int& n_target,
                               std::optional<long> ramification_override = std::nullopt) {
    if (g.degree() < 1) throw argument_error("solve_roots: polynomial degree must be at least 1");
    SolveResult out;
    if (ramification_override) {
        if (*ramification_override < 1) throw argument_error("solve_roots: ramification must be positive");
        out.ramification = *ramification_override;
    } else {
        out.ramification =
            newton_slopes(g).requires_ramification.empty() ? 1 : detail::factorial_checked(g.degree());
    }

    const PolynomialOverSeries gr = ramify(g, out.ramification);
    const Int w_target = n_target * Int(out.ramification);
    NewtonSlopesResult slopes = newton_slopes(gr);
    out.all_slopes_integral = slopes.requires_ramification.empty();
    for (std::vector<Rat>& m : slopes.requires_ramification)
        out.unresolved.push_back({std::move(m), "slope requires further ramification"});

    for (const NewtonSlope& s : slopes.slopes) {
        detail::RationalRootsResult rr = detail::rational_roots(s.leading_poly);
        for (const auto& [c, mult] : rr.roots) {
            if (mult == 1) {
                TruncatedSeries t0 = TruncatedSeries::monomial(s.m, c);
                out.roots.push_back({out.ramification, hensel_lift(gr, t0, w_target)});
            } else {
                std::vector<Rat> m(s.m.entries().begin(), s.m.entries().end());
                out.unresolved.push_back({std::move(m), "leading coefficient " + c.get_str() +
                                                            " has multiplicity " + std::to_string(mult)});
            }
        }
        if (rr.residual_degree > 0) {
            std::vector<Rat> m(s.m.entries().begin(), s.m.entries().end());
            out.unresolved.push_back({std::move(m), "leading polynomial keeps a degree-" +
                                                        std::to_string(rr.residual_degree) +
                                                        " factor without rational roots"});
        }
    }
    return out;
}

} // namespace lexlaurent
