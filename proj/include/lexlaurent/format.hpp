#pragma once

#include <string>

#include "series.hpp"

namespace lexlaurent {

// Reduced fraction as "p/q", or just "p" for integers.
inline std::string format_rat(const Rat& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace detail {

// "x1^a1 x2^a2" with zero exponents elided and exponent 1 implicit; empty
// for the identity monomial.
inline std::string format_monomial(const ExponentVector& e, const std::string& var) {
    std::string out;
    for (int i = 0; i < e.rank(); ++i) {
        if (sgn(e[i]) == 0) continue;
        if (!out.empty()) out += " ";
        out += var + std::to_string(i + 1);
        if (e[i] != 1) out += "^" + e[i].get_str();
    }
    return out;
}

// A term with a positive coefficient; the caller renders the sign.
inline std::string format_term_magnitude(const Rat& c, const ExponentVector& e, const std::string& var) {
    const std::string mono = format_monomial(e, var);
    if (mono.empty()) return format_rat(c);
    if (c == 1) return mono;
    return format_rat(c) + " " + mono;
}

} // namespace detail

// Terms ascending in lex order, joined by " + " or " - " with the magnitude
// rendered after the sign; a leading minus marks a negative first term. A
// finite window appends " + O(N)"; a series with nothing to show prints
// "O(N)", or "0" when exact.
inline std::string format_series(const TruncatedSeries& f, const std::string& var = "x") {
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        const bool negative = sgn(c) < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        out += detail::format_term_magnitude(negative ? Rat(-c) : c, e, var);
    }
    if (f.precision().is_exact()) return out.empty() ? "0" : out;
    const std::string window = "O(" + f.precision().value().get_str() + ")";
    return out.empty() ? window : out + " + " + window;
}

} // namespace lexlaurent
