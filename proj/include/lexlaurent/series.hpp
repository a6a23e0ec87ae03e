#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"

namespace lexlaurent {

// Either an exact object or a finite truncation window N >= 0. A window of N
// means: every coefficient of chart degree < N is stored exactly. Window 0
// certifies nothing.
class Precision {
public:
    static Precision exact() { return Precision(std::nullopt); }
    static Precision window(Int n) {
        if (sgn(n) < 0) n = 0;
        return Precision(std::move(n));
    }

    bool is_exact() const { return !n_.has_value(); }
    const Int& value() const {
        if (is_exact()) throw argument_error("exact precision has no finite window");
        return *n_;
    }

    // Window seen from an offset lowered by degree d.
    Precision shifted(const Int& d) const {
        if (is_exact()) return *this;
        return window(*n_ + d);
    }

    static Precision min(const Precision& a, const Precision& b) {
        if (a.is_exact()) return b;
        if (b.is_exact()) return a;
        return window(std::min(*a.n_, *b.n_));
    }

    bool operator==(const Precision& o) const { return n_ == o.n_; }
    bool operator!=(const Precision& o) const { return !(*this == o); }

    // True when a term of degree d falls inside the certified window.
    bool covers(const Int& d) const { return is_exact() || cmp(d, *n_) < 0; }

private:
    explicit Precision(std::optional<Int> n) : n_(std::move(n)) {}
    std::optional<Int> n_;
};

using TermMap = std::map<ExponentVector, Rat, LexLess>;

// A truncated element of the iterated Laurent series field. The chart
// (cone, offset) certifies two claims about the underlying object:
//   1. its support lies in offset + cone;
//   2. every coefficient of cone-degree < precision (measured from offset)
//      equals the stored one, absent meaning zero.
// Terms are stored by ambient exponent in ascending lex order, so the first
// stored term is the valuation term. Canonical form keeps offset equal to the
// lex-min of the stored support (zero offset and standard cone when empty).
class TruncatedSeries {
public:
    static TruncatedSeries zero(int rank, Precision prec = Precision::exact()) {
        return TruncatedSeries(SimpleCone::standard(rank), ExponentVector::zero(rank), prec, {});
    }

    static TruncatedSeries constant(int rank, const Rat& c, Precision prec = Precision::exact()) {
        return monomial(ExponentVector::zero(rank), c, prec);
    }

    static TruncatedSeries monomial(const ExponentVector& e, const Rat& c, Precision prec = Precision::exact()) {
        TermMap t;
        if (sgn(c) != 0) t.emplace(e, c);
        TruncatedSeries s(SimpleCone::standard(e.rank()), e, prec, std::move(t));
        s.canonicalize();
        return s;
    }

    // Assembles a series directly in the given chart. The chart must already
    // hold the support claim; pass canonicalize=false only for internal
    // values that are fed back into operations (which re-canonicalize).
    static TruncatedSeries with_chart(SimpleCone cone, ExponentVector offset, Precision prec, TermMap terms,
                                      bool canonical = true) {
        TruncatedSeries s(std::move(cone), std::move(offset), std::move(prec), std::move(terms));
        s.validate_chart();
        if (canonical) s.canonicalize();
        return s;
    }

    int rank() const { return offset_.rank(); }
    const SimpleCone& cone() const { return cone_; }
    const ExponentVector& offset() const { return offset_; }
    const Precision& precision() const { return prec_; }
    const TermMap& terms() const { return terms_; }

    bool has_stored_terms() const { return !terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && prec_.is_exact(); }

    Rat stored_coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::vector<Int> cone_coordinates_of(const ExponentVector& e) const { return cone_.coordinates(e - offset_); }
    Int degree_of(const ExponentVector& e) const { return cone_.degree(e - offset_); }

    // Is the coefficient at exponent e pinned down by the two chart claims?
    bool certifies(const ExponentVector& e) const {
        if (prec_.is_exact()) return true;
        ExponentVector d = e - offset_;
        if (!cone_.contains(d)) return true; // support claim: exactly zero out there
        return prec_.covers(cone_.degree(d));
    }

private:
    TruncatedSeries(SimpleCone cone, ExponentVector offset, Precision prec, TermMap terms)
        : cone_(std::move(cone)), offset_(std::move(offset)), prec_(std::move(prec)), terms_(std::move(terms)) {}

    void validate_chart() const {
        if (cone_.rank() != offset_.rank()) throw rank_error("series chart: cone and offset rank differ");
        for (const auto& [e, c] : terms_) {
            if (e.rank() != rank()) throw rank_error("series term rank differs from chart rank");
            if (!cone_.contains(e - offset_))
                throw argument_error("series term " + e.str() + " outside chart cone at offset " + offset_.str());
        }
    }

    // Deterministic canonical form. Offset rises to the stored lex-min; the
    // cone grows from the current one over the stored differences; the window
    // shrinks by the degree of the offset raise. Both moves keep the claims
    // conservative: degrees only grow in an enlarged cone, and a raise by
    // degree d re-bases a window of N to N - d. A windowed series with no
    // stored terms keeps its chart untouched: the window still certifies that
    // everything below it vanishes, and re-anchoring would discard that.
    void canonicalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = sgn(it->second) == 0 ? terms_.erase(it) : std::next(it);
        if (!terms_.empty()) {
            const ExponentVector p0 = terms_.begin()->first;
            std::vector<ExponentVector> diffs;
            for (const auto& [e, c] : terms_)
                if (e != p0) diffs.push_back(e - p0);
            const SimpleCone enlarged = common_cone(diffs, cone_);
            if (prec_.is_exact()) {
                cone_ = enlarged;
                offset_ = p0;
                return;
            }
            const Precision shifted = Precision::window(prec_.value() - enlarged.degree(p0 - offset_));
            TermMap kept;
            for (const auto& [e, c] : terms_)
                if (shifted.covers(enlarged.degree(e - p0))) kept.emplace(e, c);
            cone_ = enlarged;
            if (!kept.empty()) {
                terms_ = std::move(kept);
                offset_ = p0;
                prec_ = shifted;
                return;
            }
            terms_.clear(); // every stored term sat at or past the window
        }
        if (prec_.is_exact()) {
            cone_ = SimpleCone::standard(rank());
            offset_ = ExponentVector::zero(rank());
        }
    }

    SimpleCone cone_;
    ExponentVector offset_;
    Precision prec_;
    TermMap terms_;
};

namespace detail {

// One chart that can host every operand: seeded at the standard cone, grown
// over all generators and offset differences in sorted order (symmetric in
// the operands).
inline SimpleCone common_chart_cone(int rank, const std::vector<const TruncatedSeries*>& fs,
                                    const ExponentVector& base) {
    std::vector<ExponentVector> vecs;
    for (const TruncatedSeries* f : fs) {
        for (int i = 0; i < rank; ++i) vecs.push_back(f->cone().generator(i));
        ExponentVector d = f->offset() - base;
        if (!d.is_zero()) vecs.push_back(std::move(d));
    }
    std::sort(vecs.begin(), vecs.end(), LexLess{});
    vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
    return common_cone(vecs, SimpleCone::standard(rank));
}

inline ExponentVector min_offset(const TruncatedSeries& f, const TruncatedSeries& g) {
    return lex_compare(f.offset(), g.offset()) <= 0 ? f.offset() : g.offset();
}

// Smallest simple cone seen containing every operand cone; offsets play no
// role (the product chart sits at the summed offset).
inline SimpleCone merged_cone(int rank, const std::vector<const TruncatedSeries*>& fs) {
    std::vector<ExponentVector> vecs;
    for (const TruncatedSeries* f : fs)
        for (int i = 0; i < rank; ++i) vecs.push_back(f->cone().generator(i));
    std::sort(vecs.begin(), vecs.end(), LexLess{});
    vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
    return common_cone(vecs, SimpleCone::standard(rank));
}

} // namespace detail

inline TruncatedSeries make_series(int rank, const TermMap& terms, Precision prec = Precision::exact()) {
    TermMap clean;
    for (const auto& [e, c] : terms) {
        if (e.rank() != rank) throw rank_error("make_series: term rank differs from requested rank");
        if (sgn(c) != 0) clean.emplace(e, c);
    }
    if (clean.empty()) return TruncatedSeries::zero(rank, prec);
    std::vector<ExponentVector> support;
    for (const auto& [e, c] : clean) support.push_back(e);
    MinimalElementResult me = minimal_element(support);
    return TruncatedSeries::with_chart(std::move(me.cone), std::move(me.min), std::move(prec), std::move(clean));
}

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.rank() != g.rank()) throw rank_error("add: series ranks differ");
    if (f.is_exact_zero()) return g;
    if (g.is_exact_zero()) return f;
    const ExponentVector s = detail::min_offset(f, g);
    SimpleCone c = detail::common_chart_cone(f.rank(), {&f, &g}, s);
    Precision n = Precision::min(f.precision().shifted(c.degree(f.offset() - s)),
                                 g.precision().shifted(c.degree(g.offset() - s)));
    TermMap merged = f.terms();
    for (const auto& [e, coeff] : g.terms()) {
        auto [it, fresh] = merged.emplace(e, coeff);
        if (!fresh) it->second += coeff;
    }
    return TruncatedSeries::with_chart(std::move(c), s, std::move(n), std::move(merged));
}

inline TruncatedSeries negate(const TruncatedSeries& f) {
    TermMap t = f.terms();
    for (auto& [e, c] : t) c = -c;
    return TruncatedSeries::with_chart(f.cone(), f.offset(), f.precision(), std::move(t), false);
}

inline TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, negate(g)); }

inline TruncatedSeries scalar_mul(const Rat& c, const TruncatedSeries& f) {
    if (sgn(c) == 0) return TruncatedSeries::zero(f.rank());
    TermMap t = f.terms();
    for (auto& [e, v] : t) v *= c;
    return TruncatedSeries::with_chart(f.cone(), f.offset(), f.precision(), std::move(t), false);
}

// Multiplication by the exact term c * x^q: an invertible chart translation.
inline TruncatedSeries mul_monomial(const TruncatedSeries& f, const ExponentVector& q, const Rat& c) {
    if (sgn(c) == 0) throw argument_error("mul_monomial with zero coefficient");
    TermMap t;
    for (const auto& [e, v] : f.terms()) t.emplace(e + q, v * c);
    return TruncatedSeries::with_chart(f.cone(), f.offset() + q, f.precision(), std::move(t), false);
}

inline TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.rank() != g.rank()) throw rank_error("mul: series ranks differ");
    const ExponentVector s = f.offset() + g.offset();
    if (f.is_exact_zero() || g.is_exact_zero()) return TruncatedSeries::zero(f.rank());
    Precision n = Precision::min(f.precision(), g.precision());
    if (!f.has_stored_terms() || !g.has_stored_terms())
        return TruncatedSeries::with_chart(detail::merged_cone(f.rank(), {&f, &g}), s, n, {});
    SimpleCone c = detail::merged_cone(f.rank(), {&f, &g});

    struct Term {
        const ExponentVector* e;
        const Rat* v;
        Int deg;
    };
    auto collect = [&](const TruncatedSeries& h) {
        std::vector<Term> out;
        out.reserve(h.terms().size());
        for (const auto& [e, v] : h.terms()) out.push_back({&e, &v, c.degree(e - h.offset())});
        return out;
    };
    std::vector<Term> ft = collect(f), gt = collect(g);

    TermMap prod;
    for (const Term& a : ft)
        for (const Term& b : gt) {
            if (!n.covers(a.deg + b.deg)) continue;
            ExponentVector e = *a.e + *b.e;
            auto [it, fresh] = prod.try_emplace(std::move(e), Rat(0));
            it->second += *a.v * *b.v;
        }
    return TruncatedSeries::with_chart(std::move(c), s, std::move(n), std::move(prod));
}

struct Valuation {
    ExponentVector exponent;
    Rat coefficient;
};

// Leading term of the stored support. A series without stored terms cannot
// answer: its lowest term is hidden beyond the window.
inline Valuation valuation(const TruncatedSeries& f) {
    if (!f.has_stored_terms())
        throw insufficient_precision(f.is_exact_zero() ? "valuation of the zero series is undefined"
                                                       : "valuation hidden beyond the truncation window");
    const auto& [e, c] = *f.terms().begin();
    return {e, c};
}

inline TruncatedSeries truncate_to(const TruncatedSeries& f, const Precision& cap) {
    return TruncatedSeries::with_chart(f.cone(), f.offset(), Precision::min(f.precision(), cap), f.terms());
}

// Reciprocal through the geometric series: f = c x^p (1 + u) with u of
// positive degree, and 1/(1+u) = sum over k < N of (-u)^k. The target
// precision is consulted only when f is exact and not a monomial.
inline TruncatedSeries invert(const TruncatedSeries& f, Precision target = Precision::exact()) {
    if (!f.has_stored_terms())
        throw insufficient_precision(f.is_exact_zero() ? "cannot invert the zero series"
                                                       : "cannot invert a series with no stored terms");
    Precision w = Precision::min(f.precision(), target);
    const auto& [p, c] = *f.terms().begin();
    Rat cinv = Rat(1) / c;

    TermMap u_terms;
    for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it)
        u_terms.emplace(it->first - p, it->second * cinv);
    if (u_terms.empty()) // monomial up to the window: the reciprocal keeps f's own precision
        return TruncatedSeries::with_chart(f.cone(), -p, f.precision(), {{-p, cinv}}, false);
    if (w.is_exact())
        throw argument_error("invert of an exact non-monomial series requires a finite target precision");

    TruncatedSeries u = TruncatedSeries::with_chart(f.cone(), ExponentVector::zero(f.rank()), w,
                                                    std::move(u_terms), false);
    const TruncatedSeries one = TruncatedSeries::constant(f.rank(), 1);
    TruncatedSeries r = one;
    long n = to_long_checked(w.value(), "inversion window");
    for (long k = 1; k < n; ++k) r = sub(one, mul(u, r));
    return mul_monomial(r, -p, cinv);
}

inline TruncatedSeries pow(const TruncatedSeries& f, long e, Precision target = Precision::exact()) {
    if (e < 0) return pow(invert(f, target), -e, target);
    TruncatedSeries acc = TruncatedSeries::constant(f.rank(), 1);
    TruncatedSeries base = f;
    unsigned long m = static_cast<unsigned long>(e);
    while (m) {
        if (m & 1) acc = mul(acc, base);
        m >>= 1;
        if (m) base = mul(base, base);
    }
    return acc;
}

// Do all stored terms lie in the semigroup of the flag? Truncated tails are
// not inspected: this certifies the stored window only.
inline bool supported_in_semigroup(const TruncatedSeries& f, const FlagOfLattices& flag) {
    if (f.rank() != flag.rank()) throw rank_error("semigroup support test: rank mismatch");
    for (const auto& [e, c] : f.terms())
        if (!semigroup_contains(flag, e)) return false;
    return true;
}

// Chart re-expression in the sound directions: a larger cone and a lower
// offset. Rendered terms are untouched; the window grows by the degree of
// the offset drop. Exposed for chart-invariance checks.
inline TruncatedSeries rebase(const TruncatedSeries& f, const SimpleCone& cone, const ExponentVector& offset) {
    for (int i = 0; i < f.rank(); ++i)
        if (!cone.contains(f.cone().generator(i)))
            throw argument_error("rebase: new cone does not contain the old one");
    ExponentVector d = f.offset() - offset;
    if (!cone.contains(d)) throw argument_error("rebase: new offset not below the old one inside the new cone");
    return TruncatedSeries::with_chart(cone, offset, f.precision().shifted(cone.degree(d)), f.terms(), false);
}

// Equality of every rendered coefficient of common-chart degree < n, capped
// by what both operands actually certify.
inline bool equal_up_to(const TruncatedSeries& f, const TruncatedSeries& g, const Int& n) {
    if (f.rank() != g.rank()) throw rank_error("equal_up_to: series ranks differ");
    const ExponentVector s = detail::min_offset(f, g);
    SimpleCone c = detail::common_chart_cone(f.rank(), {&f, &g}, s);
    Precision w = Precision::min(Precision::window(n),
                                 Precision::min(f.precision().shifted(c.degree(f.offset() - s)),
                                                g.precision().shifted(c.degree(g.offset() - s))));
    auto render = [&](const TruncatedSeries& h) {
        TermMap out;
        for (const auto& [e, v] : h.terms())
            if (w.covers(c.degree(e - s))) out.emplace(e, v);
        return out;
    };
    return render(f) == render(g);
}

} // namespace lexlaurent
