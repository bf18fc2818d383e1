#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "kmul/classify.hpp"
#include "kmul/product.hpp"
#include "kmul/random.hpp"

using namespace kmul;

namespace {
const IfsParams kThird = validate_params(rat(1, 3), rat(4, 9));

// All-pairs oracle over explicit word enumeration.
IntervalUnion brute_product(const IfsParams& p, int n) {
    std::vector<Interval> level{Interval(rat(0), rat(1))};
    for (int k = 0; k < n; ++k) {
        std::vector<Interval> next;
        next.reserve(level.size() * 3);
        for (const auto& j : level)
            for (int sym = 1; sym <= 3; ++sym) next.push_back(child_interval(p, j, sym));
        level = std::move(next);
    }
    std::vector<Interval> products;
    products.reserve(level.size() * (level.size() + 1) / 2);
    for (std::size_t i = 0; i < level.size(); ++i)
        for (std::size_t j = i; j < level.size(); ++j)
            products.push_back(interval_product(level[i], level[j]));
    return IntervalUnion::normalized(std::move(products));
}
}  // namespace

TEST_CASE("interval products on nonnegative boxes") {
    REQUIRE(interval_product(Interval(rat(1, 2), rat(3, 5)), Interval(rat(1, 2), rat(3, 5))) ==
            Interval(rat(1, 4), rat(9, 25)));
    REQUIRE(interval_product(Interval(rat(0), rat(1)), Interval(rat(0), rat(1))) ==
            Interval(rat(0), rat(1)));
    REQUIRE(interval_product(Interval(rat(2, 3), rat(1)), Interval(rat(2, 3), rat(1))) ==
            Interval(rat(4, 9), rat(1)));
    REQUIRE_THROWS_AS(interval_product(Interval(rat(-1, 2), rat(1)), Interval(rat(0), rat(1))),
                      negative_input);
}

TEST_CASE("refinement of the pair [2/3,1] x [2/3,1] at (1/3, 4/9)") {
    Interval top(rat(2, 3), rat(1));
    ProductRefinement r = refine_product(kThird, top, top);
    REQUIRE(r.j1 == Interval(rat(4, 9), rat(484, 729)));
    REQUIRE(r.e(2) == rat(16, 27));
    REQUIRE(r.j4 == Interval(rat(64, 81), rat(1)));
    // Chain margins, frozen from the closed forms:
    REQUIRE(r.h(1) - r.e(2) == rat(52, 729));
    REQUIRE(r.h(2) - r.e(3) == rat(2, 9));
    REQUIRE(r.h(3) - r.e(4) == rat(2, 81));
    REQUIRE(r.stable());
    REQUIRE(r.as_union() == union_normalize({interval_product(top, top)}));
    REQUIRE(stability_check(kThird, top, top));
}

TEST_CASE("refinement margin closed forms on random inputs") {
    ParamSampler sampler(21);
    for (int i = 0; i < 200; ++i) {
        IfsParams p = sampler.valid_params();
        Rational b = sampler.between(rat(0), rat(1, 2));
        Rational a = sampler.between(b, rat(2, 3));
        Rational t = sampler.between(rat(0), 1 - a);
        ProductRefinement r = refine_product(p, Interval(a, a + t), Interval(b, b + t));
        const Rational c = p.c, d = p.d;
        REQUIRE(r.h(1) - r.e(2) == t * (c * c * t + a * c + b * c - b * d));
        REQUIRE(r.h(2) - r.e(3) == t * (c * t + b + a * (c - d)));
        REQUIRE(r.h(3) - r.e(4) == t * (a + b * c + c * t - a * d - b * d - d * d * t));
    }
}

TEST_CASE("refinement is symmetric and rejects width mismatches") {
    Interval i1(rat(1, 9), rat(4, 9));
    Interval i2(rat(2, 3), rat(1));
    ProductRefinement lhs = refine_product(kThird, i1, i2);
    ProductRefinement rhs = refine_product(kThird, i2, i1);
    REQUIRE(lhs.j1 == rhs.j1);
    REQUIRE(lhs.j2 == rhs.j2);
    REQUIRE(lhs.j3 == rhs.j3);
    REQUIRE(lhs.j4 == rhs.j4);
    REQUIRE_THROWS_AS(refine_product(kThird, Interval(rat(0), rat(1, 3)), Interval(rat(0), rat(1, 9))),
                      width_mismatch);
}

TEST_CASE("degenerate zero-width pair collapses to a point") {
    Interval p1(rat(1, 3), rat(1, 3));
    Interval p2(rat(1, 5), rat(1, 5));
    ProductRefinement r = refine_product(kThird, p1, p2);
    REQUIRE(r.j1 == Interval(rat(1, 15), rat(1, 15)));
    REQUIRE(r.j4 == Interval(rat(1, 15), rat(1, 15)));
    REQUIRE(r.stable());
}

TEST_CASE("stability fails outside the coverage region") {
    // lambda = c = 1/3 at the bottom pair a = b = 0: the last margin is
    // t^2(c - d^2) < 0 because c = 1/3 < (2/3)^2.
    IfsParams p = validate_params(rat(1, 3), rat(1, 3));
    Interval bottom(rat(0), rat(1, 3));
    ProductRefinement r = refine_product(p, bottom, bottom);
    REQUIRE(r.h(1) - r.e(2) >= 0);
    REQUIRE(r.h(2) - r.e(3) >= 0);
    REQUIRE(r.h(3) - r.e(4) == rat(1, 9) * (rat(1, 3) - rat(4, 9)));
    REQUIRE_FALSE(r.stable());
    REQUIRE_FALSE(stability_check(p, bottom, bottom));
}

TEST_CASE("stable refinements reproduce the parent product exactly") {
    ParamSampler sampler(22);
    int stable_seen = 0;
    for (int i = 0; i < 300; ++i) {
        IfsParams p = sampler.purple_params();
        Rational floor = 1 - p.c - p.lambda;
        Rational b = sampler.between(floor, rat(9, 10));
        Rational a = sampler.between(b, rat(19, 20));
        Rational t = sampler.between(rat(0), 1 - a);
        Interval i1(a, a + t), i2(b, b + t);
        REQUIRE(stability_check(p, i1, i2));
        REQUIRE(refine_product(p, i1, i2).as_union() ==
                union_normalize({interval_product(i1, i2)}));
        ++stable_seen;
    }
    REQUIRE(stable_seen == 300);
}

TEST_CASE("product unions merge pairwise products") {
    IntervalUnion tail = union_normalize({Interval(rat(2, 3), rat(1))});
    REQUIRE(product_union(tail, tail).str() == "[4/9,1]");

    IntervalUnion cover1 = union_normalize({Interval(rat(1, 3), rat(4, 9)),
                                            Interval(rat(2, 3), rat(1))});
    REQUIRE(product_union(cover1, cover1).str() == "[1/9,16/81] [2/9,1]");
    REQUIRE(product_square(cover1) == product_union(cover1, cover1));

    REQUIRE(product_union(IntervalUnion(), cover1).empty());
}

TEST_CASE("product unions against the brute-force oracle") {
    ParamSampler sampler(23);
    for (int i = 0; i < 8; ++i) {
        IfsParams p = sampler.valid_params();
        CoverBuilder builder(p);
        for (int n = 1; n <= 4; ++n)
            REQUIRE(product_square(builder.full_cover(n)) == brute_product(p, n));
    }
}

TEST_CASE("outer product approximations nest downward") {
    ParamSampler sampler(24);
    for (int i = 0; i < 10; ++i) {
        IfsParams p = sampler.valid_params();
        CoverBuilder builder(p);
        IntervalUnion prev = product_square(builder.full_cover(1));
        for (int n = 2; n <= 6; ++n) {
            IntervalUnion next = product_square(builder.full_cover(n));
            REQUIRE(prev.contains(next));
            prev = next;
        }
    }
}

TEST_CASE("depth invariance on the tail window") {
    REQUIRE(depth_invariance(kThird, window_tail(kThird), 6));
    REQUIRE(depth_invariance(kThird, window_tail(kThird), 1));  // single level

    // c below the coverage threshold: invariance breaks by level 2.
    IfsParams off = validate_params(rat(1, 3), rat(17, 50));
    std::string detail;
    REQUIRE_FALSE(depth_invariance(off, window_tail(off), 4, &detail));
    REQUIRE(detail.find("level 2") != std::string::npos);
}

TEST_CASE("renormalized coverage decides by the rightmost run") {
    IfsParams brown = validate_params(rat(9, 20), rat(1, 2));
    CoverageVerdict v1 =
        renormalized_coverage(brown, union_normalize({Interval(rat(121, 400), rat(1))}));
    REQUIRE(v1.covered);
    REQUIRE(v1.m == rat(121, 400));

    CoverageVerdict v2 =
        renormalized_coverage(kThird, union_normalize({Interval(rat(4, 9), rat(1))}));
    REQUIRE_FALSE(v2.covered);

    CoverageVerdict v3 =
        renormalized_coverage(kThird, union_normalize({Interval(rat(2, 9), rat(1))}));
    REQUIRE(v3.covered);
    REQUIRE(v3.m == rat(2, 9));

    CoverageVerdict v4 = renormalized_coverage(
        kThird, union_normalize({Interval(rat(2, 9), rat(1, 3)), Interval(rat(1, 2), rat(1))}));
    REQUIRE_FALSE(v4.covered);  // top run starts at 1/2 > lambda
}

TEST_CASE("refutation certificates") {
    IfsParams p = validate_params(rat(1, 3), rat(43, 100));
    CoverageVerdict v = refute_coverage(p, 4);
    REQUIRE_FALSE(v.covered);
    REQUIRE(v.gap.has_value());
    REQUIRE(*v.gap == Interval(rat(43, 100), rat(4, 9)));

    REQUIRE_THROWS_AS(refute_coverage(kThird, 4), precondition_violated);

    IfsParams borderline = validate_params(rat(27, 100), rat(53, 100));
    CoverageVerdict vb = refute_coverage(borderline, 3);
    REQUIRE(*vb.gap == Interval(rat(53, 100), rat(5329, 10000)));
}

TEST_CASE("endpoint products stay inside outer approximations and out of gaps") {
    ParamSampler sampler(25);
    for (int i = 0; i < 6; ++i) {
        IfsParams p = sampler.valid_params();
        CoverBuilder builder(p);
        auto pts = builder.endpoint_samples(window_unit(), 2);
        bool refutes = p.c < p.d * p.d;
        IntervalUnion outer = product_square(builder.full_cover(5));
        for (const auto& x : pts)
            for (const auto& y : pts) {
                Rational prod = x * y;
                REQUIRE(outer.contains(prod));
                if (refutes) REQUIRE_FALSE((p.c < prod && prod < p.d * p.d));
            }
    }
}
