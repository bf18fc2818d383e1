#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmul/classify.hpp"
#include "kmul/ifs.hpp"
#include "kmul/interval.hpp"
#include "kmul/product.hpp"
#include "kmul/rational.hpp"

namespace kmul {

class not_in_coverage_region : public std::invalid_argument {
public:
    explicit not_in_coverage_region(const std::string& what) : std::invalid_argument(what) {}
};

// Constructive witness for u = x*y with x, y in the attractor: finite
// codings of the two factors, their basic intervals, and a rigorous bound
// on |x*y - u|. The factors are the left endpoints of the final basic
// intervals, hence genuine attractor points (images of the fixed point 0);
// u itself lies in the product of the two intervals.
struct DecompositionCertificate {
    Word word_x;
    Word word_y;
    Rational x;
    Rational y;
    int scaling_power = 0;  // leading 1-symbols prepended to word_x
    Rational error_bound;
    Interval rect_x{Rational(0), Rational(1)};
    Interval rect_y{Rational(0), Rational(1)};
};

// Finds x, y in the attractor with x*y close to u, by zooming a pair of
// basic intervals whose product keeps containing the target.
//
// Route: pick the coverage window for (lambda, c), scale u by 1/lambda^n
// into the base product's top run [m, 1], pick a base pair of basic
// intervals whose product contains the scaled target, then refine `depth`
// times. At each step some child pair of the current pair again contains
// the target: the child-pair products chain across the full parent product
// because every window interval starts at or above 1-c-lambda. Ties are
// broken lexicographically on the child symbols, so output is
// deterministic.
inline DecompositionCertificate decompose(const IfsParams& p, const Rational& u, int depth) {
    require_valid(p);
    if (depth < 1) throw std::invalid_argument("refinement depth must be >= 1");
    if (u < 0 || u > 1) throw std::invalid_argument("u must lie in [0,1]");
    RegionLabel route = classify(p);
    if (route == RegionLabel::NecessaryFails)
        throw not_in_coverage_region("(1-lambda)^2 <= c fails: products do not fill [0,1]");

    DecompositionCertificate cert;
    if (u == 0) {
        cert.word_x = cert.word_y = Word(static_cast<std::size_t>(depth), '1');
        cert.x = cert.y = Rational(0);
        cert.error_bound = Rational(0);
        cert.rect_x = cert.rect_y = word_interval(p, cert.word_x);
        return cert;
    }
    if (u == 1) {
        cert.word_x = cert.word_y = Word(static_cast<std::size_t>(depth), '3');
        cert.x = cert.y = Rational(1);
        cert.error_bound = Rational(0);
        cert.rect_x = cert.rect_y = word_interval(p, cert.word_x);
        return cert;
    }

    Window window;
    switch (route) {
        case RegionLabel::Brown: window = window_tail(p); break;
        case RegionLabel::Gray:
        case RegionLabel::Orange: window = window_upper(p); break;
        case RegionLabel::Blue: window = window_split(p); break;
        default: throw not_in_coverage_region(p.invalid_reason);
    }

    // Base-level basic intervals inside the window, as words. The windows
    // have base level 1 or 2, so enumerating all words of that length is
    // cheap, and keeping words (not merged runs) preserves codings.
    std::vector<std::pair<Word, Interval>> base;
    std::vector<Word> frontier{Word()};
    for (int level = 0; level < window.base_level; ++level) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (char sym : {'1', '2', '3'}) next.push_back(w + sym);
        frontier = std::move(next);
    }
    for (const auto& w : frontier) {
        Interval j = word_interval(p, w);
        if (window.contains(j)) base.emplace_back(w, j);
    }

    CoverBuilder builder(p);
    IntervalUnion base_product = product_square(builder.windowed_cover(window, window.base_level).parts);
    if (base_product.empty() || base_product.parts().back().hi != 1)
        throw hypothesis_failure("base product does not reach 1");
    const Rational m = base_product.parts().back().lo;
    if (m > p.lambda) throw hypothesis_failure("base product does not renormalize");

    // Least n >= 0 with u / lambda^n in [m, 1].
    Rational target = u;
    int n = 0;
    while (target < m) {
        target /= p.lambda;
        ++n;
    }
    if (target > 1) throw hypothesis_failure("scaling overshot [m,1]");

    // Base pair containing the scaled target.
    std::pair<Word, Interval> ix{Word(), Interval(Rational(0), Rational(1))};
    std::pair<Word, Interval> iy = ix;
    bool found = false;
    for (std::size_t i = 0; i < base.size() && !found; ++i)
        for (std::size_t j = 0; j < base.size() && !found; ++j) {
            if (interval_product(base[i].second, base[j].second).contains(target)) {
                ix = base[i];
                iy = base[j];
                found = true;
            }
        }
    if (!found)
        throw hypothesis_failure("no base pair contains " + rat_str(target) +
                                 " although the base product covers [m,1]");

    for (int step = 0; step < depth; ++step) {
        bool refined = false;
        for (char sx : {'1', '2', '3'}) {
            Interval jx = child_interval(p, ix.second, sx - '0');
            for (char sy : {'1', '2', '3'}) {
                Interval jy = child_interval(p, iy.second, sy - '0');
                if (interval_product(jx, jy).contains(target)) {
                    ix = {ix.first + sx, jx};
                    iy = {iy.first + sy, jy};
                    refined = true;
                    break;
                }
            }
            if (refined) break;
        }
        if (!refined)
            throw hypothesis_failure("no child pair contains the target at step " +
                                     std::to_string(step) + "; chaining hypothesis violated");
    }

    cert.scaling_power = n;
    cert.word_x = Word(static_cast<std::size_t>(n), '1') + ix.first;
    cert.word_y = iy.first;
    cert.rect_x = word_interval(p, cert.word_x);
    cert.rect_y = word_interval(p, cert.word_y);
    cert.x = cert.rect_x.lo;
    cert.y = cert.rect_y.lo;
    Interval rect_product = interval_product(cert.rect_x, cert.rect_y);
    cert.error_bound = rect_product.width();
    return cert;
}

// Independent replay: recomputes both words' intervals, checks the factors
// are their left endpoints, that u lies in the rectangle product, and that
// the error bound is honest. Returns false on any mismatch.
inline bool verify_certificate(const IfsParams& p, const Rational& u,
                               const DecompositionCertificate& cert) {
    if (!p.valid) return false;
    if (!word_ok(cert.word_x) || !word_ok(cert.word_y)) return false;
    try {
        Interval rx = word_interval(p, cert.word_x);
        Interval ry = word_interval(p, cert.word_y);
        if (!(rx == cert.rect_x) || !(ry == cert.rect_y)) return false;
        // Factors must be basic-interval endpoints (images of the fixed
        // points 0 and 1, hence attractor members). decompose emits left
        // endpoints except the exact corner u = 1.
        if (cert.x != rx.lo && cert.x != rx.hi) return false;
        if (cert.y != ry.lo && cert.y != ry.hi) return false;
        Interval product = interval_product(rx, ry);
        if (!product.contains(u)) return false;
        Rational err = cert.x * cert.y - u;
        if (err < 0) err = -err;
        return err <= cert.error_bound;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace kmul
