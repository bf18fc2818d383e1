#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmul {

// Exact arbitrary-precision rational scalar. All core computations run on
// this type; no floating point is used anywhere in the library.
//
// GMP keeps values canonical (gcd(|num|, den) = 1, den > 0) through
// arithmetic as long as inputs are canonical, so every constructor here
// canonicalizes.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p/q", integer literals and decimal literals; decimals convert
// exactly ("0.43" -> 43/100).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    const auto dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            if (dot != std::string::npos) throw parse_error("mixed '/' and '.' in: " + text);
            mpz_class num(text.substr(0, slash));
            mpz_class den(text.substr(slash + 1));
            if (den == 0) throw parse_error("zero denominator in: " + text);
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        if (dot != std::string::npos) {
            std::string head = text.substr(0, dot);
            std::string tail = text.substr(dot + 1);
            if (tail.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad decimal literal: " + text);
            bool negative = !head.empty() && head[0] == '-';
            if (negative) head = head.substr(1);
            if (head.empty()) head = "0";
            mpz_class whole(head);
            mpz_class frac = tail.empty() ? mpz_class(0) : mpz_class(tail);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
            mpz_class num = whole * scale + frac;
            if (negative) num = -num;
            Rational r(num, scale);
            r.canonicalize();
            return r;
        }
        Rational r{mpz_class(text)};
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("cannot parse rational: " + text);
    }
}

// Canonical printing: "p/q", or just "p" for integers. Lossless round trip
// through parse_rational.
inline std::string rat_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// base^exponent; powers of canonical rationals stay canonical.
inline Rational pow_int(const Rational& base, unsigned exponent) {
    Rational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exponent);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exponent);
    return out;
}

}  // namespace kmul
