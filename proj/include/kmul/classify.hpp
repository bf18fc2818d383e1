#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "kmul/ifs.hpp"
#include "kmul/product.hpp"
#include "kmul/random.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// Exact sign tests for the two irrational thresholds. On (0,1):
//   lambda >= 2 - sqrt(3)      <=>  lambda^2 - 4 lambda + 1 <= 0
//   lambda >= (3 - sqrt(5))/2  <=>  lambda^2 - 3 lambda + 1 <= 0
// The constants themselves are never materialized.
inline bool ge_two_minus_sqrt3(const Rational& lambda) {
    return lambda * lambda - 4 * lambda + 1 <= 0;
}

inline bool ge_half_of_3_minus_sqrt5(const Rational& lambda) {
    return lambda * lambda - 3 * lambda + 1 <= 0;
}

enum class RegionLabel { InvalidParams, NecessaryFails, Brown, Gray, Orange, Blue };

inline const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::InvalidParams: return "InvalidParams";
        case RegionLabel::NecessaryFails: return "NecessaryFails";
        case RegionLabel::Brown: return "Brown";
        case RegionLabel::Gray: return "Gray";
        case RegionLabel::Orange: return "Orange";
        case RegionLabel::Blue: return "Blue";
    }
    return "?";
}

struct NecessityResult {
    bool holds = false;              // (1-lambda)^2 <= c
    bool strong_obstruction = false; // lambda < 2-sqrt(3): even 2*lambda < (1-lambda)^2
};

inline NecessityResult necessary_condition(const IfsParams& p) {
    require_valid(p);
    NecessityResult r;
    r.holds = p.d * p.d <= p.c;
    if (!r.holds && !ge_two_minus_sqrt3(p.lambda)) r.strong_obstruction = true;
    return r;
}

// Partition of the coverage region into the four lemma routes, with
// precedence Brown > Gray > Orange > Blue on overlapping hypotheses.
// Precedence affects the route only, never the verdict.
inline RegionLabel classify(const IfsParams& p) {
    if (!p.valid) return RegionLabel::InvalidParams;
    if (p.c < p.d * p.d) return RegionLabel::NecessaryFails;
    if (ge_half_of_3_minus_sqrt5(p.lambda)) return RegionLabel::Brown;
    if (p.c * (1 - p.lambda) <= p.lambda * p.lambda * (1 - p.lambda) + p.lambda)
        return RegionLabel::Gray;  // c <= lambda^2 + lambda/(1-lambda), cleared of the denominator
    if ((p.c - p.lambda * p.lambda) * p.d <= p.c * p.c) return RegionLabel::Orange;
    return RegionLabel::Blue;
}

struct TheoremVerdict {
    enum class Outcome { Covered, NotCovered, Invalid } outcome = Outcome::Invalid;
    RegionLabel route = RegionLabel::InvalidParams;
    Window window;
    IntervalUnion base_product;
    Rational m;        // left edge of the rightmost run of the base product
    Rational route_m;  // the route's renormalization point
    std::optional<Interval> gap;
    bool invariance_ok = true;
    int invariance_to = 0;
    std::string detail;
};

// Full verdict for one parameter pair.
//
// Covered verdicts are produced only through the chain: the route's window
// has all base pieces starting at or above 1-c-lambda, the region supplies
// the child-pair chaining inequalities, hence products of covers are depth
// invariant and the product of the base cover already equals the product of
// the window's attractor slice; that base product renormalizes to [0,1]
// because its rightmost run starts at or below lambda. Depth invariance up
// to n_check is additionally audited numerically.
inline TheoremVerdict verify_theorem(const IfsParams& p, int n_check = 4) {
    TheoremVerdict v;
    if (!p.valid) {
        v.outcome = TheoremVerdict::Outcome::Invalid;
        v.route = RegionLabel::InvalidParams;
        v.detail = p.invalid_reason;
        return v;
    }
    v.route = classify(p);
    if (v.route == RegionLabel::NecessaryFails) {
        CoverageVerdict refutation = refute_coverage(p, std::max(1, std::min(n_check, 8)));
        v.outcome = TheoremVerdict::Outcome::NotCovered;
        v.base_product = refutation.base_product;
        v.m = refutation.m;
        v.route_m = p.d * p.d;
        v.gap = refutation.gap;
        v.detail = refutation.certificate;
        NecessityResult nec = necessary_condition(p);
        if (nec.strong_obstruction) v.detail += "; strong obstruction: 2*lambda < (1-lambda)^2";
        return v;
    }

    const Rational lam = p.lambda;
    const Rational c = p.c;
    const Rational d = p.d;
    switch (v.route) {
        case RegionLabel::Brown:
            v.window = window_tail(p);
            v.route_m = d * d;
            break;
        case RegionLabel::Gray:
            v.window = window_upper(p);
            v.route_m = (c - lam * lam) * d;
            break;
        case RegionLabel::Orange: {
            v.window = window_upper(p);
            Rational cl2 = c - lam * lam;
            v.route_m = cl2 * cl2;
            // The route's reduction: 2*lambda <= sqrt(lambda) + lambda^2,
            // squared to (2*lambda - lambda^2)^2 <= lambda.
            Rational reduced = 2 * lam - lam * lam;
            if (reduced * reduced > lam)
                throw hypothesis_failure("orange reduction (2l-l^2)^2 <= l fails at lambda = " +
                                         rat_str(lam));
            break;
        }
        case RegionLabel::Blue: {
            v.window = window_split(p);
            Rational cl = c - lam;
            v.route_m = cl * cl;
            if (c < rat(1, 2))
                throw hypothesis_failure("blue window needs c >= 1/2, got c = " + rat_str(c));
            if (!(c * c > cl * d))
                throw hypothesis_failure("blue merge inequality c^2 > (c-l)(1-l) fails");
            break;
        }
        default:
            throw std::logic_error("unreachable route");
    }

    // Chaining hypotheses shared by every route: the window floor and the
    // parameter inequalities of the child-pair argument.
    for (const auto& piece : v.window.pieces)
        if (piece.lo < 1 - c - lam)
            throw hypothesis_failure("window piece " + piece.str() + " starts below 1-c-lambda = " +
                                     rat_str(1 - c - lam));
    if (1 - 2 * c > lam || (1 - c) > 2 * lam)
        throw hypothesis_failure("chaining inequalities 1-2c <= lambda, (1-c)/2 <= lambda fail");
    if (v.route_m > lam)
        throw hypothesis_failure("route renormalization point " + rat_str(v.route_m) +
                                 " exceeds lambda");

    CoverBuilder builder(p);
    Cover base_cover = builder.windowed_cover(v.window, v.window.base_level);
    v.base_product = product_square(base_cover.parts);
    if (v.base_product.empty() || v.base_product.parts().back().hi != 1 ||
        v.base_product.parts().back().lo > v.route_m)
        throw hypothesis_failure("base product " + v.base_product.str() +
                                 " does not cover [" + rat_str(v.route_m) + ",1]");

    CoverageVerdict cov = renormalized_coverage(p, v.base_product);
    if (!cov.covered)
        throw hypothesis_failure("renormalization failed on a classified route: " +
                                 cov.certificate);
    v.m = cov.m;
    v.outcome = TheoremVerdict::Outcome::Covered;

    v.invariance_to = std::max(n_check, v.window.base_level);
    std::string audit;
    v.invariance_ok = depth_invariance(p, v.window, v.invariance_to, &audit);
    if (!v.invariance_ok)
        throw hypothesis_failure("depth invariance audit failed: " + audit);
    v.detail = std::string(to_string(v.route)) + " route over window " + v.window.str() +
               ": base product " + v.base_product.str() + "; " + cov.certificate;
    return v;
}

class counterexample_found : public std::runtime_error {
public:
    explicit counterexample_found(const std::string& what) : std::runtime_error(what) {}
};

// Property audit: valid parameters with (1-lambda)^2 <= c < 1-lambda imply
// the two chaining inequalities 1-2c <= lambda and (1-c)/2 <= lambda.
inline bool implication_lemma_check(int samples, std::uint64_t seed = 20260810) {
    ParamSampler sampler(seed);
    for (int i = 0; i < samples; ++i) {
        IfsParams p = sampler.purple_params();
        if (1 - 2 * p.c > p.lambda || (1 - p.c) > 2 * p.lambda)
            throw counterexample_found("chaining inequalities fail at lambda = " +
                                       rat_str(p.lambda) + ", c = " + rat_str(p.c));
    }
    return true;
}

// c(1-l+lc) > (c-l^2)(1-l^2) for every c when 4l^3+l^2-6l+1 < 0, i.e. the
// discriminant of c^2+(l-1)c+l-l^3 is negative. That holds on the sampled
// range lambda >= 2-sqrt(3) (it fails for small lambda, e.g. lambda = 1/10),
// which is the range where the gray route uses the inequality.
inline bool gray_merge_inequality_check(int samples, std::uint64_t seed = 20260810) {
    ParamSampler sampler(seed);
    for (int i = 0; i < samples; ++i) {
        Rational lam = sampler.between(rat(26, 100), rat(99, 100));
        if (!ge_two_minus_sqrt3(lam)) continue;
        Rational disc = 4 * lam * lam * lam + lam * lam - 6 * lam + 1;
        if (disc >= 0)
            throw counterexample_found("discriminant nonnegative at lambda = " + rat_str(lam));
        Rational c = sampler.between(Rational(0), Rational(1));
        if (c * c + (lam - 1) * c + lam - lam * lam * lam <= 0)
            throw counterexample_found("gray merge inequality fails at lambda = " +
                                       rat_str(lam) + ", c = " + rat_str(c));
    }
    return true;
}

// c^2 > (c-l)(1-l) for every c when (1-l)^2 - 4(l-l^2) < 0, true on
// 2-sqrt(3) <= lambda < (3-sqrt(5))/2; plus the guard (c-l)^2 <= lambda for
// c <= 2*lambda.
inline bool split_merge_inequality_check(int samples, std::uint64_t seed = 20260810) {
    ParamSampler sampler(seed);
    int done = 0;
    while (done < samples) {
        Rational lam = sampler.between(rat(26, 100), rat(39, 100));
        if (!ge_two_minus_sqrt3(lam) || ge_half_of_3_minus_sqrt5(lam)) continue;
        ++done;
        Rational disc = (1 - lam) * (1 - lam) - 4 * (lam - lam * lam);
        if (disc >= 0)
            throw counterexample_found("split discriminant nonnegative at lambda = " +
                                       rat_str(lam));
        Rational c = sampler.between(Rational(0), Rational(1));
        if (c * c - (c - lam) * (1 - lam) <= 0)
            throw counterexample_found("split merge inequality fails at lambda = " +
                                       rat_str(lam) + ", c = " + rat_str(c));
        Rational c2 = sampler.between(lam, 2 * lam);
        if ((c2 - lam) * (c2 - lam) > lam)
            throw counterexample_found("(c-l)^2 <= lambda fails at lambda = " + rat_str(lam) +
                                       ", c = " + rat_str(c2));
    }
    return true;
}

}  // namespace kmul
