#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmul/interval.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// Integer-coefficient polynomial, constant term first.
struct IntegerPolynomial {
    std::vector<long> coeffs;

    explicit IntegerPolynomial(std::vector<long> c) : coeffs(std::move(c)) {
        while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
        if (coeffs.empty() || coeffs.back() == 0)
            throw std::invalid_argument("polynomial needs a nonzero leading coefficient");
    }

    // x^degree + extra, e.g. monomial_plus(5, {1, -4, 1}) = x^5 + x^2 - 4x + 1.
    static IntegerPolynomial monomial_plus(unsigned degree, std::vector<long> low_terms) {
        low_terms.resize(degree + 1, 0);
        low_terms[degree] += 1;
        return IntegerPolynomial(std::move(low_terms));
    }

    unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }

    Rational eval(const Rational& x) const {
        Rational acc(coeffs.back());
        for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    std::string str() const {
        std::string out;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] == 0) continue;
            if (!out.empty()) out += coeffs[i] > 0 ? " + " : " - ";
            else if (coeffs[i] < 0) out += "-";
            long a = coeffs[i] < 0 ? -coeffs[i] : coeffs[i];
            if (a != 1 || i == 0) out += std::to_string(a);
            if (i >= 1) out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }
};

class no_root_found : public std::runtime_error {
public:
    explicit no_root_found(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Leftmost sign change of p in [a, b] given nonzero sign(a) = sa, refined by
// bisection to the requested width. Returns an enclosure whose endpoints have
// opposite signs, or a degenerate enclosure at an exact rational root.
inline std::optional<Interval> leftmost_change(const IntegerPolynomial& p, Rational a, int sa,
                                               Rational b, int sb, const Rational& precision,
                                               int depth) {
    if (sb == 0) {
        // b is an exact root; look for an earlier sign change first.
        Rational m = (a + b) / 2;
        if (depth > 0 && !Interval(a, b).is_point()) {
            int sm = p.sign_at(m);
            if (sm != 0) {
                if (auto earlier = leftmost_change(p, a, sa, m, sm, precision, depth - 1))
                    return earlier;
            } else {
                if (auto earlier = leftmost_change(p, a, sa, m, 0, precision, depth - 1))
                    return earlier;
                return Interval(m, m);
            }
        }
        return Interval(b, b);
    }
    if (sa * sb > 0) return std::nullopt;
    // sa*sb < 0: certified bracket; narrow it, staying on the leftmost change.
    while (b - a > precision) {
        if (depth-- <= 0)
            throw no_root_found("bisection depth exhausted before reaching precision");
        Rational m = (a + b) / 2;
        int sm = p.sign_at(m);
        if (sm == 0) {
            if (auto earlier = leftmost_change(p, a, sa, m, 0, precision, depth)) return earlier;
            return Interval(m, m);
        }
        if (sa * sm < 0) {
            b = std::move(m);
            sb = sm;
        } else {
            a = std::move(m);
            sa = sm;
        }
    }
    return Interval(a, b);
}

}  // namespace detail

// Encloses the smallest sign-change root of p in the window to the requested
// width, using only exact sign evaluations at rational points. When the
// window endpoints do not bracket, the interior is scanned on a progressively
// doubled grid (so an even number of interior crossings up to that resolution
// is still caught); roots of even multiplicity are invisible to sign tests
// and fall under the no_root_found contract.
inline Interval isolate_smallest_root(const IntegerPolynomial& p, const Interval& window,
                                      const Rational& precision, int max_depth = 256) {
    if (precision <= 0) throw std::invalid_argument("precision must be positive");
    const Rational& a = window.lo;
    const Rational& b = window.hi;
    int sa = p.sign_at(a);
    if (sa == 0) return Interval(a, a);
    int sb = p.sign_at(b);
    if (auto r = detail::leftmost_change(p, a, sa, b, sb, precision, max_depth)) return *r;

    // Endpoints agree in sign: scan interior grids of 2, 4, ..., 2^12 cells.
    const Rational span = b - a;
    for (int k = 1; k <= 12; ++k) {
        long cells = 1L << k;
        Rational prev = a;
        int sprev = sa;
        for (long i = 1; i <= cells; ++i) {
            Rational x = (i == cells) ? b : a + span * rat(i, cells);
            int sx = p.sign_at(x);
            if (sprev * sx <= 0) {
                if (auto r = detail::leftmost_change(p, prev, sprev, x, sx, precision, max_depth))
                    return *r;
            }
            prev = std::move(x);
            sprev = sx;
        }
    }
    throw no_root_found("no sign change of " + p.str() + " detected in " + window.str());
}

}  // namespace kmul
