#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace lexlaurent {

// A simple lattice cone: n generators forming a Z-basis, generator i confined
// to the first i coordinates with i-th entry 1. Equivalently the generator
// matrix (columns g_1..g_n) is unit upper triangular, which also makes every
// column lex-positive.
class SimpleCone {
public:
    explicit SimpleCone(IntMatrix generators) : g_(std::move(generators)) {
        if (g_.rows() != g_.cols() || g_.rows() < 1) throw argument_error("cone generator matrix must be square");
        for (int i = 0; i < g_.rows(); ++i) {
            if (g_.at(i, i) != 1) throw argument_error("cone generator matrix must have unit diagonal");
            for (int j = 0; j < i; ++j)
                if (sgn(g_.at(i, j)) != 0)
                    throw argument_error("cone generator matrix must be upper triangular");
        }
    }

    explicit SimpleCone(const std::vector<ExponentVector>& gens)
        : SimpleCone(columns_to_matrix(gens)) {}

    static SimpleCone standard(int rank) { return SimpleCone(IntMatrix::identity(rank)); }

    int rank() const { return g_.rows(); }
    const IntMatrix& generator_matrix() const { return g_; }

    ExponentVector generator(int i) const { // i is 0-based
        ExponentVector v(rank());
        for (int r = 0; r < rank(); ++r) v[r] = g_.at(r, i);
        return v;
    }

    std::vector<ExponentVector> generators() const {
        std::vector<ExponentVector> out;
        out.reserve(static_cast<std::size_t>(rank()));
        for (int i = 0; i < rank(); ++i) out.push_back(generator(i));
        return out;
    }

    // Coordinates of a in the generator basis. The matrix is unit triangular,
    // so back substitution is exact over the integers.
    std::vector<Int> coordinates(const ExponentVector& a) const {
        if (a.rank() != rank())
            throw rank_error("cone coordinates: vector rank " + std::to_string(a.rank()) + " vs cone rank " +
                             std::to_string(rank()));
        std::vector<Int> c(static_cast<std::size_t>(rank()));
        for (int i = rank() - 1; i >= 0; --i) {
            Int v = a[i];
            for (int j = i + 1; j < rank(); ++j) v -= g_.at(i, j) * c[static_cast<std::size_t>(j)];
            c[static_cast<std::size_t>(i)] = std::move(v);
        }
        return c;
    }

    bool contains(const ExponentVector& a) const {
        for (const Int& c : coordinates(a))
            if (sgn(c) < 0) return false;
        return true;
    }

    // Sum of the coordinates; the grading used for truncation windows.
    // Only meaningful when contains(a).
    Int degree(const ExponentVector& a) const {
        Int d = 0;
        for (const Int& c : coordinates(a)) d += c;
        return d;
    }

    ExponentVector from_coordinates(const std::vector<Int>& c) const {
        return ExponentVector(g_.mul(c));
    }

    bool operator==(const SimpleCone& o) const { return g_ == o.g_; }
    bool operator!=(const SimpleCone& o) const { return !(*this == o); }

private:
    static IntMatrix columns_to_matrix(const std::vector<ExponentVector>& gens) {
        if (gens.empty()) throw argument_error("cone needs at least one generator");
        int n = gens.front().rank();
        if (static_cast<int>(gens.size()) != n) throw argument_error("cone needs exactly rank generators");
        IntMatrix m(n, n);
        for (int j = 0; j < n; ++j) {
            if (gens[static_cast<std::size_t>(j)].rank() != n) throw rank_error("cone generator rank mismatch");
            for (int i = 0; i < n; ++i) m.at(i, j) = gens[static_cast<std::size_t>(j)][i];
        }
        return m;
    }

    IntMatrix g_;
};

inline bool cone_contains(const SimpleCone& cone, const ExponentVector& a) { return cone.contains(a); }

// Smallest enlargement step: returns a simple cone containing both the input
// cone and the lex-positive point a. Only the generator at a's top nonzero
// coordinate moves; it absorbs the negative coordinates below it.
inline SimpleCone extend_cone(const SimpleCone& cone, const ExponentVector& a) {
    if (!lex_positive(a)) throw argument_error("extend_cone requires a lex-positive point, got " + a.str());
    std::vector<Int> k = cone.coordinates(a);
    int j = -1;
    for (int i = cone.rank() - 1; i >= 0; --i)
        if (sgn(k[static_cast<std::size_t>(i)]) != 0) {
            j = i;
            break;
        }
    // j >= 0 since a != 0, and k[j] > 0 since a is lex-positive.
    bool inside = true;
    for (const Int& c : k)
        if (sgn(c) < 0) {
            inside = false;
            break;
        }
    if (inside) return cone;

    IntMatrix g = cone.generator_matrix();
    for (int i = 0; i < j; ++i) {
        const Int& ki = k[static_cast<std::size_t>(i)];
        if (sgn(ki) >= 0) continue;
        for (int r = 0; r <= i; ++r) g.at(r, j) += ki * g.at(r, i);
    }
    return SimpleCone(std::move(g));
}

// Folds extend_cone over the points in order. Each step keeps the previous
// cone inside the new one, so all earlier points stay covered.
inline SimpleCone common_cone(const std::vector<ExponentVector>& points, const SimpleCone& seed) {
    SimpleCone c = seed;
    for (const ExponentVector& p : points) c = extend_cone(c, p);
    return c;
}

struct MinimalElementResult {
    ExponentVector min;
    SimpleCone cone;
};

// Lex-min of a finite nonempty set, together with a simple cone containing
// every difference s - min. The cone is built from the coordinates of the
// minimum (m_k chosen in order n..1); for inputs lying outside any simple
// cone that recipe can miss a difference, so the leftovers are folded in.
inline MinimalElementResult minimal_element(const std::vector<ExponentVector>& points) {
    if (points.empty()) throw argument_error("minimal_element of empty set");
    const int n = points.front().rank();
    ExponentVector s_min = points.front();
    for (const ExponentVector& p : points)
        if (lex_compare(p, s_min) < 0) s_min = p;

    IntMatrix g = IntMatrix::identity(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) g.at(i, j) = -s_min[i];
    SimpleCone cone{std::move(g)};

    std::vector<ExponentVector> diffs;
    for (const ExponentVector& p : points) {
        ExponentVector d = p - s_min;
        if (!d.is_zero()) diffs.push_back(std::move(d));
    }
    std::sort(diffs.begin(), diffs.end(), LexLess{});
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    return {std::move(s_min), common_cone(diffs, cone)};
}

// Least positive multiple of each generator lying in the semigroup, then the
// box spanned by those multiples filtered through the semigroup. The result
// generates cone-intersect-semigroup but is not reduced.
inline std::vector<ExponentVector> nonnormal_generators(const SimpleCone& cone, const FlagOfLattices& flag) {
    if (cone.rank() != flag.rank()) throw rank_error("nonnormal_generators: cone and flag rank differ");
    const int n = cone.rank();

    std::vector<Int> k(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ExponentVector gi = cone.generator(i);
        // level(gi) == i+1 by triangularity; the index of that level bounds the search.
        Int bound = flag.sublattice_index(level(gi));
        Int m = 1;
        ExponentVector acc = gi;
        while (!semigroup_contains(flag, acc)) {
            ++m;
            acc += gi;
            if (cmp(m, bound) > 0)
                throw argument_error("no multiple of generator " + gi.str() + " lies in the semigroup");
        }
        k[static_cast<std::size_t>(i)] = m;
    }

    // Every generator already in the semigroup: the box adds nothing new,
    // since any cone point is a nonnegative combination of semigroup members.
    bool trivial = true;
    for (const Int& ki : k)
        if (cmp(ki, 1) != 0) {
            trivial = false;
            break;
        }
    if (trivial) {
        std::vector<ExponentVector> gens = cone.generators();
        std::sort(gens.begin(), gens.end(), LexLess{});
        return gens;
    }

    std::vector<ExponentVector> out;
    std::vector<Int> d(static_cast<std::size_t>(n), Int(0));
    while (true) {
        bool apex = true;
        for (const Int& di : d)
            if (sgn(di) != 0) {
                apex = false;
                break;
            }
        if (!apex) {
            ExponentVector p = cone.from_coordinates(d);
            if (semigroup_contains(flag, p)) out.push_back(std::move(p));
        }
        // odometer over the box 0 <= d_i <= k_i
        int pos = 0;
        while (pos < n && cmp(d[static_cast<std::size_t>(pos)], k[static_cast<std::size_t>(pos)]) == 0) {
            d[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
        ++d[static_cast<std::size_t>(pos)];
    }
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

namespace detail {

// Can target be written as a nonnegative integer combination of gens
// (cone coordinates)? Depth-first with a per-generator cap.
inline bool decomposes_over(const std::vector<std::vector<Int>>& gens, const std::vector<Int>& target,
                            std::size_t idx) {
    bool zero = true;
    for (const Int& t : target)
        if (sgn(t) != 0) {
            zero = false;
            break;
        }
    if (zero) return true;
    if (idx == gens.size()) return false;
    const std::vector<Int>& g = gens[idx];
    Int cap(-1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (sgn(g[i]) == 0) continue;
        Int c = target[i] / g[i];
        if (sgn(c) < 0) c = 0;
        if (sgn(cap) < 0 || cmp(c, cap) < 0) cap = c;
    }
    if (sgn(cap) < 0) cap = 0; // zero generator column cannot occur, but stay safe
    std::vector<Int> rest(target.size());
    for (Int c = cap; sgn(c) >= 0; --c) {
        bool feasible = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
            rest[i] = target[i] - c * g[i];
            if (sgn(rest[i]) < 0) {
                feasible = false;
                break;
            }
        }
        if (feasible && decomposes_over(gens, rest, idx + 1)) return true;
        if (sgn(c) == 0) break;
    }
    return false;
}

} // namespace detail

// Optional reduction pass: greedily drops generators that decompose over the
// remaining ones. Exact (the point's own coordinates bound the search), but
// never required by the core pipeline.
inline std::vector<ExponentVector> minimize_generators(std::vector<ExponentVector> gens, const SimpleCone& cone) {
    // Try dropping lex-largest first so the small irreducibles survive.
    std::sort(gens.begin(), gens.end(), [](const ExponentVector& a, const ExponentVector& b) {
        return lex_compare(a, b) > 0;
    });
    std::vector<ExponentVector> kept = gens;
    for (std::size_t i = 0; i < kept.size();) {
        std::vector<std::vector<Int>> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(cone.coordinates(kept[j]));
        if (detail::decomposes_over(others, cone.coordinates(kept[i]), 0))
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    std::sort(kept.begin(), kept.end(), LexLess{});
    return kept;
}

// A cone remembered together with the flag and the generating set of its
// semigroup points.
struct NonNormalCone {
    SimpleCone cone;
    FlagOfLattices flag;
    std::vector<ExponentVector> generating_set;
};

inline NonNormalCone make_nonnormal_cone(const SimpleCone& cone, const FlagOfLattices& flag) {
    return {cone, flag, minimize_generators(nonnormal_generators(cone, flag), cone)};
}

// Coordinates of the inner cone's generators in the outer cone's basis;
// columns must come out nonnegative, and triangularity gives unit diagonal.
inline IntMatrix transition_matrix(const SimpleCone& inner, const SimpleCone& outer) {
    if (inner.rank() != outer.rank()) throw rank_error("transition_matrix: cone ranks differ");
    const int n = inner.rank();
    IntMatrix t(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Int> c = outer.coordinates(inner.generator(j));
        for (int i = 0; i < n; ++i) {
            if (sgn(c[static_cast<std::size_t>(i)]) < 0)
                throw argument_error("transition_matrix: inner cone not contained in outer cone");
            t.at(i, j) = std::move(c[static_cast<std::size_t>(i)]);
        }
    }
    return t;
}

} // namespace lexlaurent
