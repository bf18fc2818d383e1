#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmul/ifs.hpp"
#include "kmul/interval.hpp"
#include "kmul/rational.hpp"

namespace kmul {

class negative_input : public std::invalid_argument {
public:
    explicit negative_input(const std::string& what) : std::invalid_argument(what) {}
};

class width_mismatch : public std::invalid_argument {
public:
    explicit width_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

class precondition_violated : public std::invalid_argument {
public:
    explicit precondition_violated(const std::string& what) : std::invalid_argument(what) {}
};

// Signals a violated internal guarantee: a lemma-side hypothesis failed on an
// input the classifier routed here. Must not occur on valid inputs.
class hypothesis_failure : public std::logic_error {
public:
    explicit hypothesis_failure(const std::string& what) : std::logic_error(what) {}
};

// Image of (x,y) -> xy on a rectangle of nonnegative intervals; the product
// is monotone in each coordinate there, so the image is an interval.
inline Interval interval_product(const Interval& x, const Interval& y) {
    if (x.lo < 0 || y.lo < 0)
        throw negative_input("interval_product requires nonnegative intervals");
    return Interval(x.lo * y.lo, x.hi * y.hi);
}

// The four products of child pairs of two equal-width basic intervals
// [a,a+t], [b,b+t] with a >= b >= 0 (arguments are ordered internally):
//   J1 = [ab, (a+ct)(b+ct)]           both-left children
//   J2 = [b(a+dt), (a+t)(b+ct)]       right child of the upper interval
//   J3 = [a(b+dt), (a+ct)(b+t)]       right child of the lower interval
//   J4 = [(a+dt)(b+dt), (a+t)(b+t)]   both-right children
// where d = 1 - lambda and the two left-hand children already merged to
// [*, *+ct] under validity.
struct ProductRefinement {
    Interval j1, j2, j3, j4;

    const Rational& e(int i) const { return pick(i).lo; }
    const Rational& h(int i) const { return pick(i).hi; }

    // The refinement reproduces the parent product exactly iff consecutive
    // pieces chain: h1 >= e2, h2 >= e3, h3 >= e4.
    bool stable() const { return j1.hi >= j2.lo && j2.hi >= j3.lo && j3.hi >= j4.lo; }

    IntervalUnion as_union() const { return IntervalUnion::normalized({j1, j2, j3, j4}); }

private:
    const Interval& pick(int i) const {
        switch (i) {
            case 1: return j1;
            case 2: return j2;
            case 3: return j3;
            case 4: return j4;
        }
        throw std::out_of_range("refinement index must be 1..4");
    }
};

inline ProductRefinement refine_product(const IfsParams& p, const Interval& i1,
                                        const Interval& i2) {
    require_valid(p);
    if (i1.width() != i2.width())
        throw width_mismatch("refine_product requires equal widths, got " +
                             rat_str(i1.width()) + " and " + rat_str(i2.width()));
    const Interval& upper = i1.lo >= i2.lo ? i1 : i2;
    const Interval& lower = i1.lo >= i2.lo ? i2 : i1;
    const Rational& a = upper.lo;
    const Rational& b = lower.lo;
    if (b < 0) throw negative_input("refine_product requires nonnegative intervals");
    const Rational t = upper.width();
    const Rational ct = p.c * t;
    const Rational dt = p.d * t;
    return ProductRefinement{
        Interval(a * b, (a + ct) * (b + ct)),
        Interval(b * (a + dt), (a + t) * (b + ct)),
        Interval(a * (b + dt), (a + ct) * (b + t)),
        Interval((a + dt) * (b + dt), (a + t) * (b + t)),
    };
}

// True iff the child-pair products of (i1, i2) chain into the full parent
// product, i.e. products are unchanged by one refinement step.
inline bool stability_check(const IfsParams& p, const Interval& i1, const Interval& i2) {
    return refine_product(p, i1, i2).stable();
}

// Union of pairwise interval products. Distributivity of the product image
// over set unions makes this exact on merged parts.
inline IntervalUnion product_union(const IntervalUnion& u1, const IntervalUnion& u2) {
    std::vector<Interval> raw;
    raw.reserve(u1.size() * u2.size());
    for (const auto& x : u1.parts())
        for (const auto& y : u2.parts()) raw.push_back(interval_product(x, y));
    return IntervalUnion::normalized(std::move(raw));
}

// product_union(u, u) exploiting symmetry.
inline IntervalUnion product_square(const IntervalUnion& u) {
    std::vector<Interval> raw;
    raw.reserve(u.size() * (u.size() + 1) / 2);
    const auto& parts = u.parts();
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i; j < parts.size(); ++j)
            raw.push_back(interval_product(parts[i], parts[j]));
    return IntervalUnion::normalized(std::move(raw));
}

// Checks that the product of the windowed cover with itself is the same
// union at every level from the window's base level up to n_max.
inline bool depth_invariance(const IfsParams& p, const Window& w, int n_max,
                             std::string* detail = nullptr) {
    require_valid(p);
    if (n_max < w.base_level)
        throw std::invalid_argument("n_max below window base level");
    CoverBuilder builder(p);
    IntervalUnion base = product_square(builder.windowed_cover(w, w.base_level).parts);
    for (int n = w.base_level + 1; n <= n_max; ++n) {
        IntervalUnion level = product_square(builder.windowed_cover(w, n).parts);
        if (!(level == base)) {
            if (detail)
                *detail = "product at level " + std::to_string(n) + " is " + level.str() +
                          ", base is " + base.str();
            return false;
        }
    }
    if (detail) *detail = "products identical for levels " + std::to_string(w.base_level) +
                          ".." + std::to_string(n_max);
    return true;
}

// Outcome of a coverage decision. `gap` is set only when the verdict is a
// genuine refutation: a nonempty open interval disjoint from every outer
// approximation of the product set.
struct CoverageVerdict {
    bool covered = false;
    IntervalUnion base_product;
    Rational m;  // left edge of the rightmost run of base_product
    std::optional<Interval> gap;
    std::string certificate;
};

// Decides whether base u (scaled copies of base by lambda^n) u {0} covers
// [0,1], given base inside [0,1] with its rightmost run reaching 1.
//
// Exact criterion: with [m,1] the rightmost run, coverage holds iff m <=
// lambda. No scaled copy reaches above lambda, so (lambda,1] must already
// lie in base; conversely m <= lambda chains the copies lambda^n*[m,1]
// (each copy's top lambda^n meets the previous copy's bottom lambda^(n-1)*m)
// down to 0. Finitely many copies therefore decide the question; the audit
// below re-checks the chain down to lambda^8 by explicit unions.
inline CoverageVerdict renormalized_coverage(const IfsParams& p, const IntervalUnion& base) {
    require_valid(p);
    CoverageVerdict v;
    v.base_product = base;
    if (base.empty()) {
        v.certificate = "empty base product";
        return v;
    }
    const Interval& unit = base.parts().front();
    if (unit.lo < 0 || base.parts().back().hi > 1)
        throw precondition_violated("base product must lie inside [0,1]");
    const Interval& last = base.parts().back();
    if (last.hi != 1) {
        v.m = last.lo;
        v.certificate = "base product does not reach 1 (top run " + last.str() + ")";
        return v;
    }
    v.m = last.lo;
    if (v.m > p.lambda) {
        v.certificate = "renormalization gap: m = " + rat_str(v.m) + " > lambda = " +
                        rat_str(p.lambda) + "; scaled copies stop at lambda";
        return v;
    }
    v.covered = true;
    v.certificate = "m = " + rat_str(v.m) + " <= lambda = " + rat_str(p.lambda) +
                    "; copies lambda^n*[m,1] chain down to 0";

    // Audit the finite chain explicitly down to lambda^8.
    IntervalUnion chain = base;
    Rational scale(1);
    for (int n = 1; n <= 8; ++n) {
        scale *= p.lambda;
        chain = chain.unite(base.affine(scale, Rational(0)));
    }
    chain = chain.unite(IntervalUnion::normalized({Interval(Rational(0), scale)}));
    if (!(chain == IntervalUnion::normalized({Interval(Rational(0), Rational(1))})))
        throw hypothesis_failure("renormalization chain audit failed for base " + base.str());
    return v;
}

// Refutation when c < (1-lambda)^2: every point of the attractor lies in
// [0,c] u [1-lambda,1] (the level-1 cover), so products lie in
// [0,c] u [(1-lambda)^2, 1] and the open gap in between is missed. The
// level-n outer approximation is computed as a consistency check; it must
// avoid the gap's interior.
inline CoverageVerdict refute_coverage(const IfsParams& p, int n) {
    require_valid(p);
    const Rational threshold = p.d * p.d;
    if (p.c >= threshold)
        throw precondition_violated("refute_coverage requires c < (1-lambda)^2, got c = " +
                                    rat_str(p.c) + ", (1-lambda)^2 = " + rat_str(threshold));
    if (n < 1) throw std::invalid_argument("outer approximation level must be >= 1");
    CoverageVerdict v;
    Interval gap(p.c, threshold);
    CoverBuilder builder(p);
    IntervalUnion outer = product_square(builder.full_cover(n));
    for (const auto& part : outer.parts())
        if (part.lo < gap.hi && part.hi > gap.lo)
            throw hypothesis_failure("outer approximation at level " + std::to_string(n) +
                                     " meets the refutation gap " + gap.str());
    v.covered = false;
    v.base_product = outer;
    v.m = outer.empty() ? Rational(0) : outer.parts().back().lo;
    v.gap = gap;
    v.certificate = "open gap (" + rat_str(gap.lo) + "," + rat_str(gap.hi) +
                    ") is disjoint from the level-" + std::to_string(n) +
                    " outer approximation of the product set";
    return v;
}

}  // namespace kmul
