#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "series.hpp"

namespace lexlaurent {

// A monomial-adapted change of variables y_i = f_i(x). The matrix of
// valuation exponents (column i = nu(f_i)) must satisfy the simple-cone
// invariants, so substitution sends lex-positive support to lex-positive
// support and the log-Jacobian has unit diagonal.
class ChangeOfVariables {
public:
    explicit ChangeOfVariables(std::vector<TruncatedSeries> images) : images_(std::move(images)) {
        const int n = static_cast<int>(images_.size());
        if (n == 0) throw argument_error("change of variables needs at least one image");
        IntMatrix v(n, n);
        for (int i = 0; i < n; ++i) {
            if (images_[static_cast<std::size_t>(i)].rank() != n)
                throw rank_error("change of variables: image rank differs from image count");
            ExponentVector nu = valuation(images_[static_cast<std::size_t>(i)]).exponent;
            for (int r = 0; r < n; ++r) v.at(r, i) = nu[r];
        }
        nu_matrix_ = SimpleCone(v); // throws unless unit upper triangular
    }

    static ChangeOfVariables identity(int rank) {
        std::vector<TruncatedSeries> im;
        im.reserve(static_cast<std::size_t>(rank));
        for (int i = 0; i < rank; ++i)
            im.push_back(TruncatedSeries::monomial(ExponentVector::unit(rank, i), Rat(1)));
        return ChangeOfVariables(std::move(im));
    }

    int rank() const { return static_cast<int>(images_.size()); }
    const TruncatedSeries& image(int i) const { return images_[static_cast<std::size_t>(i - 1)]; } // i is 1-based
    const std::vector<TruncatedSeries>& images() const { return images_; }
    const SimpleCone& nu_matrix() const { return nu_matrix_; }

private:
    std::vector<TruncatedSeries> images_;
    SimpleCone nu_matrix_ = SimpleCone::standard(1);
};

// Termwise d/dx_i on exponents, i 1-based. The chart shifts by -e_i with the
// window unchanged there; canonicalization then re-anchors at the surviving
// lex-min, which costs one degree whenever the constant term was certified.
inline TruncatedSeries partial_derivative(const TruncatedSeries& f, int i) {
    if (i < 1 || i > f.rank()) throw argument_error("partial_derivative: variable index out of range");
    const ExponentVector ei = ExponentVector::unit(f.rank(), i - 1);
    TermMap out;
    for (const auto& [e, c] : f.terms()) {
        Rat v = c * Rat(e[i - 1]);
        if (sgn(v) != 0) out.emplace(e - ei, std::move(v));
    }
    return TruncatedSeries::with_chart(f.cone(), f.offset() - ei, f.precision(), std::move(out));
}

namespace detail {

// Cone certified to hold the substituted image of anything supported in
// offset + cone(g): the monomial part maps cone(g) through the nu-matrix, and
// each image contributes its own unit tail directions.
inline SimpleCone substitution_cone(const TruncatedSeries& g, const ChangeOfVariables& cv) {
    const int n = g.rank();
    std::vector<ExponentVector> vecs;
    for (int j = 0; j < n; ++j)
        vecs.emplace_back(cv.nu_matrix().generator_matrix().mul(g.cone().generator(j).entries()));
    for (const TruncatedSeries& f : cv.images())
        for (int j = 0; j < n; ++j) vecs.push_back(f.cone().generator(j));
    std::sort(vecs.begin(), vecs.end(), LexLess{});
    vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
    return common_cone(vecs, SimpleCone::standard(n));
}

} // namespace detail

// Monomial substitution y^m -> prod f_i^{m_i}, extended linearly over the
// stored terms. The unknown tail of g is carried by a zero marker series in
// the mapped chart, so the result window is the minimum of g's window seen
// through the nu-matrix and the image windows met along the way.
inline TruncatedSeries substitute(const TruncatedSeries& g, const ChangeOfVariables& cv,
                                  Precision target = Precision::exact()) {
    const int n = g.rank();
    if (cv.rank() != n) throw rank_error("substitute: change of variables rank differs from series rank");
    for (const TruncatedSeries& f : cv.images())
        if (!f.has_stored_terms())
            throw insufficient_precision("substitute: image with no stored terms");

    Precision eff = Precision::min(target, g.precision());
    for (const TruncatedSeries& f : cv.images()) eff = Precision::min(eff, f.precision());

    TruncatedSeries acc = TruncatedSeries::zero(n);
    if (!g.precision().is_exact()) {
        const ExponentVector mapped_offset(cv.nu_matrix().generator_matrix().mul(g.offset().entries()));
        acc = TruncatedSeries::with_chart(detail::substitution_cone(g, cv), mapped_offset, g.precision(), {}, false);
    }

    std::vector<std::map<long, TruncatedSeries>> cache(static_cast<std::size_t>(n));
    auto image_power = [&](int i, long e) -> const TruncatedSeries& {
        auto& slot = cache[static_cast<std::size_t>(i)];
        auto it = slot.find(e);
        if (it == slot.end()) it = slot.emplace(e, pow(cv.image(i + 1), e, eff)).first;
        return it->second;
    };

    for (const auto& [e, c] : g.terms()) {
        TruncatedSeries term = TruncatedSeries::constant(n, c);
        for (int i = 0; i < n; ++i) {
            long ei = to_long_checked(e[i], "substitution exponent");
            if (ei != 0) term = mul(term, image_power(i, ei));
        }
        acc = add(acc, term);
    }
    return truncate_to(acc, target);
}

// A logarithmic n-form written against the volume form of the torus:
// omega = density * dx_1/x_1 ^ ... ^ dx_n/x_n.
struct LogDifferentialForm {
    TruncatedSeries density;

    int rank() const { return density.rank(); }
};

inline LogDifferentialForm make_log_form(TruncatedSeries density) { return {std::move(density)}; }

// M_ij = x_j d_j(f_i) / f_i. Unit upper triangular nu-matrices give unit
// diagonal entries, so det M is a unit with constant term 1.
inline std::vector<std::vector<TruncatedSeries>> log_jacobian(const ChangeOfVariables& cv,
                                                              Precision target = Precision::exact()) {
    const int n = cv.rank();
    std::vector<std::vector<TruncatedSeries>> m;
    m.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        TruncatedSeries finv = invert(cv.image(i), target);
        std::vector<TruncatedSeries> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) {
            TruncatedSeries dj = partial_derivative(cv.image(i), j);
            TruncatedSeries xj = TruncatedSeries::monomial(ExponentVector::unit(n, j - 1), Rat(1));
            row.push_back(mul(mul(xj, dj), finv));
        }
        m.push_back(std::move(row));
    }
    return m;
}

namespace detail {

// Leibniz expansion; the intended scale is small rank.
inline TruncatedSeries leibniz_det(const std::vector<std::vector<TruncatedSeries>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    TruncatedSeries det = TruncatedSeries::zero(n);
    do {
        int inversions = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        TruncatedSeries prod = TruncatedSeries::constant(n, Rat(inversions % 2 ? -1 : 1));
        for (int i = 0; i < n; ++i)
            prod = mul(prod, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        det = add(det, prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace detail

// Pullback along the substitution map: the density transforms by the
// substituted density times det of the log-Jacobian, which preserves the
// residue.
inline LogDifferentialForm pullback(const LogDifferentialForm& w, const ChangeOfVariables& cv,
                                    Precision target = Precision::exact()) {
    TruncatedSeries sub_density = substitute(w.density, cv, target);
    TruncatedSeries det = detail::leibniz_det(log_jacobian(cv, target));
    return {truncate_to(mul(sub_density, det), target)};
}

// res(omega) = coefficient of the identity monomial of the density. Reading
// it demands that the chart certifies that coefficient.
inline Rat residue(const LogDifferentialForm& w) {
    const ExponentVector e0 = ExponentVector::zero(w.rank());
    if (!w.density.certifies(e0))
        throw insufficient_precision("residue: identity coefficient lies beyond the certified window");
    return w.density.stored_coefficient(e0);
}

// One-variable-at-a-time coefficient extraction in the given order: keep the
// terms with zero exponent in the chosen variable, then recurse on the rest.
// Equals residue for every order; kept separate as an oracle.
inline Rat residue_iterated(const LogDifferentialForm& w, const std::vector<int>& order) {
    const int n = w.rank();
    if (static_cast<int>(order.size()) != n) throw argument_error("residue_iterated: order must list every variable");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : order) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
            throw argument_error("residue_iterated: order is not a permutation");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    const ExponentVector e0 = ExponentVector::zero(n);
    if (!w.density.certifies(e0))
        throw insufficient_precision("residue_iterated: identity coefficient lies beyond the certified window");

    TermMap live = w.density.terms();
    for (int v : order) {
        TermMap next;
        for (const auto& [e, c] : live)
            if (sgn(e[v - 1]) == 0) next.emplace(e, c);
        live = std::move(next);
    }
    Rat out(0);
    for (const auto& [e, c] : live) out += c; // only the identity exponent survives
    return out;
}

} // namespace lexlaurent
