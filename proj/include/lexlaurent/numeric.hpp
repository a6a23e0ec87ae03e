#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lexlaurent {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sgn(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

// Truncated quotient, like C integer division.
inline Int quot_trunc(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw zero_denominator("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Converts small multiprecision values where a machine integer is structurally
// required (loop counts, container sizes). Throws instead of wrapping around.
inline long to_long_checked(const Int& a, const char* what) {
    if (!a.fits_slong_p())
        throw argument_error(std::string(what) + " out of machine range: " + a.get_str());
    return a.get_si();
}

// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Int(0)) {
        if (rows < 0 || cols < 0) throw argument_error("matrix with negative dimension");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    IntMatrix mul(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw argument_error("matrix product shape mismatch");
        IntMatrix out(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (sgn(a) == 0) continue;
                for (int j = 0; j < other.cols_; ++j) out.at(i, j) += a * other.at(k, j);
            }
        return out;
    }

    std::vector<Int> mul(const std::vector<Int>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw argument_error("matrix-vector shape mismatch");
        std::vector<Int> out(static_cast<std::size_t>(rows_), Int(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
        return out;
    }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

private:
    int rows_, cols_;
    std::vector<Int> data_;
};

// Column-style Hermite form: H = B * U with U unimodular, H lower triangular
// with positive diagonal. Column operations only, so the column span over the
// integers is preserved. Input must be square and nonsingular.
inline IntMatrix hermite_column_form(const IntMatrix& b) {
    if (b.rows() != b.cols()) throw argument_error("hermite form of non-square matrix");
    const int n = b.rows();
    IntMatrix h = b;
    auto col_axpy = [&](int dst, int src, const Int& q) { // col_dst -= q * col_src
        if (sgn(q) == 0) return;
        for (int r = 0; r < n; ++r) h.at(r, dst) -= q * h.at(r, src);
    };
    auto col_swap = [&](int a, int c) {
        if (a == c) return;
        for (int r = 0; r < n; ++r) std::swap(h.at(r, a), h.at(r, c));
    };
    for (int i = 0; i < n; ++i) {
        // Euclidean reduction across columns i..n-1 on row i until one nonzero survives.
        while (true) {
            int best = -1;
            for (int j = i; j < n; ++j) {
                if (sgn(h.at(i, j)) == 0) continue;
                if (best < 0 || cmp(abs(h.at(i, j)), abs(h.at(i, best))) < 0) best = j;
            }
            if (best < 0) throw argument_error("singular matrix has no hermite column form");
            bool others = false;
            for (int j = i; j < n; ++j) {
                if (j == best || sgn(h.at(i, j)) == 0) continue;
                others = true;
                col_axpy(j, best, quot_trunc(h.at(i, j), h.at(i, best)));
            }
            if (!others) {
                col_swap(i, best);
                break;
            }
        }
        if (sgn(h.at(i, i)) < 0)
            for (int r = 0; r < n; ++r) h.at(r, i) = -h.at(r, i);
    }
    return h;
}

// Does v lie in the integer column span of the matrix whose hermite column
// form is h? Forward substitution with divisibility checks.
inline bool in_column_span(const IntMatrix& h, const std::vector<Int>& v) {
    const int n = h.rows();
    if (static_cast<int>(v.size()) != n) throw argument_error("span test shape mismatch");
    std::vector<Int> r = v;
    for (int i = 0; i < n; ++i) {
        if (!divides(h.at(i, i), r[static_cast<std::size_t>(i)])) return false;
        Int q = r[static_cast<std::size_t>(i)] / h.at(i, i);
        if (sgn(q) == 0) continue;
        for (int k = i; k < n; ++k) r[static_cast<std::size_t>(k)] -= q * h.at(k, i);
    }
    for (const Int& x : r)
        if (sgn(x) != 0) return false;
    return true;
}

inline Int abs_det_from_hermite(const IntMatrix& h) {
    Int d = 1;
    for (int i = 0; i < h.rows(); ++i) d *= h.at(i, i);
    return abs(d);
}

} // namespace lexlaurent
