#pragma once

#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace lexlaurent {

// A point of the rank-n exponent lattice. Entries are arbitrary-precision
// integers; entry i is the exponent of the i-th variable (0-based here,
// 1-based in user-facing text).
class ExponentVector {
public:
    explicit ExponentVector(int rank) : entries_(check_rank(rank), Int(0)) {}
    explicit ExponentVector(std::vector<Int> entries) : entries_(std::move(entries)) {
        check_rank(static_cast<int>(entries_.size()));
    }
    ExponentVector(std::initializer_list<long> entries) {
        entries_.reserve(entries.size());
        for (long e : entries) entries_.emplace_back(e);
        check_rank(static_cast<int>(entries_.size()));
    }

    static ExponentVector zero(int rank) { return ExponentVector(rank); }
    static ExponentVector unit(int rank, int i) { // i is 0-based
        ExponentVector v(rank);
        v.entries_[static_cast<std::size_t>(i)] = 1;
        return v;
    }

    int rank() const { return static_cast<int>(entries_.size()); }
    const Int& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    Int& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<Int>& entries() const { return entries_; }

    bool is_zero() const {
        for (const Int& e : entries_)
            if (sgn(e) != 0) return false;
        return true;
    }

    ExponentVector& operator+=(const ExponentVector& o) {
        require_same_rank(o);
        for (int i = 0; i < rank(); ++i) entries_[static_cast<std::size_t>(i)] += o[i];
        return *this;
    }
    ExponentVector& operator-=(const ExponentVector& o) {
        require_same_rank(o);
        for (int i = 0; i < rank(); ++i) entries_[static_cast<std::size_t>(i)] -= o[i];
        return *this;
    }
    friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
    friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
    friend ExponentVector operator-(const ExponentVector& a) {
        ExponentVector r(a.rank());
        for (int i = 0; i < a.rank(); ++i) r[i] = -a[i];
        return r;
    }
    friend ExponentVector operator*(const Int& c, ExponentVector a) {
        for (int i = 0; i < a.rank(); ++i) a[i] *= c;
        return a;
    }

    bool operator==(const ExponentVector& o) const { return entries_ == o.entries_; }
    bool operator!=(const ExponentVector& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < rank(); ++i) {
            if (i) os << ", ";
            os << entries_[static_cast<std::size_t>(i)].get_str();
        }
        os << ')';
        return os.str();
    }

    void require_same_rank(const ExponentVector& o) const {
        if (rank() != o.rank())
            throw rank_error("exponent vectors of rank " + std::to_string(rank()) + " and " +
                             std::to_string(o.rank()));
    }

private:
    static int check_rank(int rank) {
        if (rank < 1) throw argument_error("exponent lattice must have rank >= 1");
        return rank;
    }

    std::vector<Int> entries_;
};

// The order on the lattice compares the last entry first: a < b iff at the
// largest index where they differ, a's entry is smaller. With this order
// x_n dominates x_{n-1} dominates ... dominates x_1.
inline int lex_compare(const ExponentVector& a, const ExponentVector& b) {
    a.require_same_rank(b);
    for (int i = a.rank() - 1; i >= 0; --i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

inline bool lex_positive(const ExponentVector& a) {
    for (int i = a.rank() - 1; i >= 0; --i) {
        int s = sgn(a[i]);
        if (s != 0) return s > 0;
    }
    return false;
}

struct LexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return lex_compare(a, b) < 0;
    }
};

// Index (1-based) of the last nonzero entry; 0 for the zero vector. An
// element of level k lies in the k-th coordinate sublattice and no smaller one.
inline int level(const ExponentVector& a) {
    for (int i = a.rank() - 1; i >= 0; --i)
        if (sgn(a[i]) != 0) return i + 1;
    return 0;
}

// A flag of sublattices: for each k in 1..n-1 a full-rank sublattice of the
// rank-k coordinate lattice, given by a k x k basis matrix (columns are the
// basis vectors) and nested so each level's lattice contains the previous
// one. Level n is always the full lattice. Omitted levels default to full.
class FlagOfLattices {
public:
    explicit FlagOfLattices(int rank, std::map<int, IntMatrix> sublattice_bases = {})
        : rank_(rank), bases_(std::move(sublattice_bases)) {
        if (rank_ < 1) throw argument_error("flag rank must be >= 1");
        for (const auto& [k, b] : bases_) {
            if (k < 1 || k >= rank_)
                throw argument_error("sublattice level " + std::to_string(k) + " outside 1.." +
                                     std::to_string(rank_ - 1));
            if (b.rows() != k || b.cols() != k)
                throw argument_error("sublattice basis at level " + std::to_string(k) + " must be " +
                                     std::to_string(k) + "x" + std::to_string(k));
            hermite_.emplace(k, hermite_column_form(b)); // throws if singular
        }
        check_nesting();
    }

    static FlagOfLattices normal(int rank) { return FlagOfLattices(rank); }

    int rank() const { return rank_; }
    bool has_sublattice(int k) const { return bases_.count(k) != 0; }
    const IntMatrix& sublattice_basis(int k) const { return bases_.at(k); }

    // Index of the level-k sublattice inside the full rank-k lattice.
    Int sublattice_index(int k) const {
        auto it = hermite_.find(k);
        if (it == hermite_.end()) return Int(1);
        return abs_det_from_hermite(it->second);
    }

    // Is the truncation of a to its first k entries a member of the level-k
    // sublattice? Entries beyond k are ignored by the caller's contract.
    bool truncation_in_level(const ExponentVector& a, int k) const {
        if (k == rank_) return true;
        auto it = hermite_.find(k);
        if (it == hermite_.end()) return true;
        std::vector<Int> v(a.entries().begin(), a.entries().begin() + k);
        return in_column_span(it->second, v);
    }

private:
    void check_nesting() const {
        // Columns of the level k-1 basis, zero-extended by one entry, must lie
        // in the level-k lattice. Absent levels are the full lattice.
        for (int k = 2; k < rank_; ++k) {
            auto hi = hermite_.find(k);
            if (hi == hermite_.end()) continue;
            auto lo = bases_.find(k - 1);
            IntMatrix low = lo == bases_.end() ? IntMatrix::identity(k - 1) : lo->second;
            for (int j = 0; j < k - 1; ++j) {
                std::vector<Int> v(static_cast<std::size_t>(k), Int(0));
                for (int i = 0; i < k - 1; ++i) v[static_cast<std::size_t>(i)] = low.at(i, j);
                if (!in_column_span(hi->second, v))
                    throw argument_error("flag not nested: level " + std::to_string(k - 1) +
                                         " basis vector escapes level " + std::to_string(k));
            }
        }
    }

    int rank_;
    std::map<int, IntMatrix> bases_;
    std::map<int, IntMatrix> hermite_;
};

// Membership in the semigroup attached to the flag: zero, plus every
// lex-positive element whose truncation at its level lies in that level's
// sublattice.
inline bool semigroup_contains(const FlagOfLattices& flag, const ExponentVector& a) {
    if (a.rank() != flag.rank())
        throw rank_error("semigroup test: vector rank " + std::to_string(a.rank()) + " vs flag rank " +
                         std::to_string(flag.rank()));
    int lv = level(a);
    if (lv == 0) return true;
    if (sgn(a[lv - 1]) < 0) return false; // level entry decides the lex sign
    return flag.truncation_in_level(a, lv);
}

} // namespace lexlaurent
