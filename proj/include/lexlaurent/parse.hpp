#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lexlaurent {

// Expression tree of the command-line grammar. Subtraction is a sum with a
// negated right child; "t" (the solve unknown) is its own node kind.
struct ExpressionAST {
    enum class Kind { Sum, Product, Quotient, Power, Variable, Literal, Negation, Unknown };

    Kind kind;
    std::vector<ExpressionAST> children;
    long exponent = 0; // Power
    int variable = 0;  // Variable, 1-based
    Int literal{0};    // Literal
};

namespace detail {

class Parser {
public:
    Parser(const std::string& src, int n, bool allow_t) : src_(src), n_(n), allow_t_(allow_t) {}

    ExpressionAST run() {
        ExpressionAST e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw parse_error("unexpected trailing input", pos_);
        return e;
    }

private:
    static ExpressionAST node(ExpressionAST::Kind k, ExpressionAST a, ExpressionAST b) {
        ExpressionAST e{k, {}, 0, 0, Int(0)};
        e.children.push_back(std::move(a));
        e.children.push_back(std::move(b));
        return e;
    }
    static ExpressionAST node(ExpressionAST::Kind k, ExpressionAST a) {
        ExpressionAST e{k, {}, 0, 0, Int(0)};
        e.children.push_back(std::move(a));
        return e;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    ExpressionAST expr() {
        ExpressionAST lhs = term();
        while (true) {
            if (eat('+')) {
                lhs = node(ExpressionAST::Kind::Sum, std::move(lhs), term());
            } else if (eat('-')) {
                lhs = node(ExpressionAST::Kind::Sum, std::move(lhs),
                           node(ExpressionAST::Kind::Negation, term()));
            } else {
                return lhs;
            }
        }
    }

    // Juxtaposition multiplies: the series formatter separates a coefficient
    // from its monomial by a space, and anything that can start an atom
    // (other than a sign) continues the current term.
    ExpressionAST term() {
        ExpressionAST lhs = factor();
        while (true) {
            if (eat('*')) {
                lhs = node(ExpressionAST::Kind::Product, std::move(lhs), factor());
            } else if (eat('/')) {
                lhs = node(ExpressionAST::Kind::Quotient, std::move(lhs), factor());
            } else {
                char c = peek();
                if (std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 't' || c == '(')
                    lhs = node(ExpressionAST::Kind::Product, std::move(lhs), factor());
                else
                    return lhs;
            }
        }
    }

    ExpressionAST factor() {
        ExpressionAST base = atom();
        if (!eat('^')) return base;
        bool negative = eat('-');
        std::size_t at = pos_;
        ExpressionAST e = node(ExpressionAST::Kind::Power, std::move(base));
        e.exponent = digits_as_long(negative, at);
        return e;
    }

    ExpressionAST atom() {
        char c = peek();
        std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            ExpressionAST inner = expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return node(ExpressionAST::Kind::Negation, factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ExpressionAST e{ExpressionAST::Kind::Literal, {}, 0, 0, Int(0)};
            e.literal = Int(digits(at));
            return e;
        }
        if (c == 'x') {
            ++pos_;
            std::size_t digits_at = pos_;
            long idx = digits_as_long(false, digits_at);
            if (idx < 1 || idx > n_)
                throw parse_error("unknown variable x" + std::to_string(idx) + " at rank " + std::to_string(n_),
                                  at);
            ExpressionAST e{ExpressionAST::Kind::Variable, {}, 0, 0, Int(0)};
            e.variable = static_cast<int>(idx);
            return e;
        }
        if (c == 't') {
            if (!allow_t_) throw parse_error("'t' is only meaningful in solve inputs", at);
            ++pos_;
            return ExpressionAST{ExpressionAST::Kind::Unknown, {}, 0, 0, Int(0)};
        }
        if (c == '\0') throw parse_error("unexpected end of input", at);
        throw parse_error(std::string("unexpected character '") + c + "'", at);
    }

    std::string digits(std::size_t at) {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out += src_[pos_++];
        if (out.empty()) throw parse_error("expected digits", at);
        return out;
    }

    long digits_as_long(bool negative, std::size_t at) {
        const std::string d = digits(at);
        Int v(d);
        if (negative) v = -v;
        if (!v.fits_slong_p()) throw parse_error("integer out of range", at);
        return v.get_si();
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int n_;
    bool allow_t_;
};

} // namespace detail

inline ExpressionAST parse_expression(const std::string& text, int n, bool allow_t = false) {
    if (n < 1) throw rank_error("parse_expression: rank must be at least 1");
    return detail::Parser(text, n, allow_t).run();
}

// Quotient of Laurent polynomials with a nonzero denominator. No common
// factors are cancelled; expansion does not need them to be.
class RationalFunction {
public:
    RationalFunction(LaurentPolynomial num, LaurentPolynomial den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (num_.rank() != den_.rank()) throw rank_error("rational function rank mismatch");
        if (den_.is_zero()) throw zero_denominator("rational function with zero denominator");
    }

    static RationalFunction constant(int rank, const Rat& c) {
        return {LaurentPolynomial::constant(rank, c), LaurentPolynomial::constant(rank, Rat(1))};
    }

    int rank() const { return num_.rank(); }
    const LaurentPolynomial& num() const { return num_; }
    const LaurentPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw zero_denominator("division by the zero expression");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    RationalFunction pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw zero_denominator("negative power of the zero expression");
            return RationalFunction(den_, num_).pow(-e);
        }
        RationalFunction acc = constant(rank(), Rat(1));
        RationalFunction base = *this;
        for (unsigned long m = static_cast<unsigned long>(e); m; m >>= 1) {
            if (m & 1) acc = acc * base;
            if (m > 1) base = base * base;
        }
        return acc;
    }

private:
    LaurentPolynomial num_;
    LaurentPolynomial den_;
};

// A polynomial in the solve unknown t with rational-function coefficients.
// Plain expressions are the degree-zero case.
class TPolynomial {
public:
    explicit TPolynomial(std::vector<RationalFunction> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw argument_error("t-polynomial needs at least one coefficient");
        trim();
    }

    static TPolynomial constant(RationalFunction c) { return TPolynomial({std::move(c)}); }
    static TPolynomial unknown(int rank) {
        return TPolynomial({RationalFunction::constant(rank, Rat(0)), RationalFunction::constant(rank, Rat(1))});
    }

    int rank() const { return coeffs_.front().rank(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<RationalFunction>& coefficients() const { return coeffs_; }
    const RationalFunction& scalar() const {
        if (degree() != 0) throw argument_error("expression depends on t where a plain expression is required");
        return coeffs_.front();
    }

    TPolynomial operator-() const {
        std::vector<RationalFunction> out;
        out.reserve(coeffs_.size());
        for (const RationalFunction& c : coeffs_) out.push_back(-c);
        return TPolynomial(std::move(out));
    }
    friend TPolynomial operator+(const TPolynomial& a, const TPolynomial& b) {
        std::vector<RationalFunction> out = a.coeffs_;
        out.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), RationalFunction::constant(a.rank(), Rat(0)));
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] = out[i] + b.coeffs_[i];
        return TPolynomial(std::move(out));
    }
    friend TPolynomial operator*(const TPolynomial& a, const TPolynomial& b) {
        std::vector<RationalFunction> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                                          RationalFunction::constant(a.rank(), Rat(0)));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return TPolynomial(std::move(out));
    }
    friend TPolynomial operator/(const TPolynomial& a, const TPolynomial& b) {
        return a * TPolynomial::constant(RationalFunction::constant(a.rank(), Rat(1)) / b.scalar());
    }

    TPolynomial pow(long e) const {
        if (e < 0) return TPolynomial::constant(scalar().pow(e));
        TPolynomial acc = constant(RationalFunction::constant(rank(), Rat(1)));
        TPolynomial base = *this;
        for (unsigned long m = static_cast<unsigned long>(e); m; m >>= 1) {
            if (m & 1) acc = acc * base;
            if (m > 1) base = base * base;
        }
        return acc;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<RationalFunction> coeffs_;
};

inline TPolynomial evaluate_expression(const ExpressionAST& e, int n) {
    switch (e.kind) {
    case ExpressionAST::Kind::Literal:
        return TPolynomial::constant(RationalFunction::constant(n, Rat(e.literal)));
    case ExpressionAST::Kind::Variable:
        return TPolynomial::constant(RationalFunction(
            LaurentPolynomial::monomial(ExponentVector::unit(n, e.variable - 1), Rat(1)),
            LaurentPolynomial::constant(n, Rat(1))));
    case ExpressionAST::Kind::Unknown:
        return TPolynomial::unknown(n);
    case ExpressionAST::Kind::Negation:
        return -evaluate_expression(e.children.front(), n);
    case ExpressionAST::Kind::Sum:
        return evaluate_expression(e.children.front(), n) + evaluate_expression(e.children.back(), n);
    case ExpressionAST::Kind::Product:
        return evaluate_expression(e.children.front(), n) * evaluate_expression(e.children.back(), n);
    case ExpressionAST::Kind::Quotient:
        return evaluate_expression(e.children.front(), n) / evaluate_expression(e.children.back(), n);
    case ExpressionAST::Kind::Power:
        return evaluate_expression(e.children.front(), n).pow(e.exponent);
    }
    throw argument_error("evaluate_expression: unhandled node");
}

} // namespace lexlaurent
