#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmul/interval.hpp"
#include "kmul/rational.hpp"
#include "kmul/roots.hpp"

namespace kmul {

// Certified branch-and-bound proof that the parameter region
//   S:  (1-l)^2 <= c <= 2l,  (c-l^2)(1-l) >= c^2,  c(1-l) >= l^2(1-l)+l,
//       l^2-4l+1 <= 0,  l^2-3l+1 >= 0
// satisfies c >= 1/2. The region's two lower envelopes (1-l)^2 and
// l^2 + l/(1-l) cross c = 1/2 at the same abscissa (the root of
// 2l^2-4l+1), so boxes hugging that tangency cannot be emptied by a single
// constraint; they are closed by a dedicated rule that case-splits on the
// sign of 2l^2-4l+1 pointwise. Everything else is plain exact interval
// arithmetic on dyadic boxes.

struct ParamBox {
    Rational l_lo, l_hi, c_lo, c_hi;

    Rational l_width() const { return l_hi - l_lo; }
    Rational c_width() const { return c_hi - c_lo; }
    Rational area() const { return l_width() * c_width(); }
    std::string str() const {
        return "[" + rat_str(l_lo) + "," + rat_str(l_hi) + "]x[" + rat_str(c_lo) + "," +
               rat_str(c_hi) + "]";
    }
};

enum class BoxRule {
    AboveHalf,           // c_lo >= 1/2
    EmptyNecessity,      // c < (1-l)^2 on the whole box
    EmptyUpperRatio,     // c > 2l on the whole box
    EmptyCurve,          // (c-l^2)(1-l) < c^2 on the whole box
    EmptyLowerEnvelope,  // c(1-l) < l^2(1-l)+l on the whole box
    EmptyLeftRange,      // l < 2-sqrt(3) on the whole box
    EmptyRightRange,     // l > (3-sqrt(5))/2 on the whole box
    TangentColumn,       // c_hi <= 1/2: pointwise dichotomy on sign(2l^2-4l+1)
};

inline const char* to_string(BoxRule rule) {
    switch (rule) {
        case BoxRule::AboveHalf: return "above-half";
        case BoxRule::EmptyNecessity: return "empty-necessity";
        case BoxRule::EmptyUpperRatio: return "empty-upper-ratio";
        case BoxRule::EmptyCurve: return "empty-curve";
        case BoxRule::EmptyLowerEnvelope: return "empty-lower-envelope";
        case BoxRule::EmptyLeftRange: return "empty-left-range";
        case BoxRule::EmptyRightRange: return "empty-right-range";
        case BoxRule::TangentColumn: return "tangent-column";
    }
    return "?";
}

inline std::optional<BoxRule> parse_box_rule(const std::string& name) {
    for (BoxRule rule : {BoxRule::AboveHalf, BoxRule::EmptyNecessity, BoxRule::EmptyUpperRatio,
                         BoxRule::EmptyCurve, BoxRule::EmptyLowerEnvelope, BoxRule::EmptyLeftRange,
                         BoxRule::EmptyRightRange, BoxRule::TangentColumn})
        if (name == to_string(rule)) return rule;
    return std::nullopt;
}

struct BlueBoxLeaf {
    ParamBox box;
    BoxRule rule;
};

struct BlueCertificate {
    ParamBox root;
    int depth = 0;
    Interval tangency{Rational(0), Rational(0)};  // enclosure of the root of 2l^2-4l+1
    std::vector<BlueBoxLeaf> leaves;
    std::vector<ParamBox> undecided;

    bool complete() const { return undecided.empty(); }
};

namespace blue_detail {

inline Rational q5(const Rational& l) { return l * l - 4 * l + 1; }    // root: 2-sqrt(3)
inline Rational q6(const Rational& l) { return l * l - 3 * l + 1; }    // root: (3-sqrt(5))/2
inline Rational qt(const Rational& l) { return 2 * l * l - 4 * l + 1; }  // root: 1-sqrt(2)/2
inline Rational envelope_cleared(const Rational& l) {  // (l^2 + l/(1-l)) * (1-l)
    return l * l * (1 - l) + l;
}

// Interval product allowing negative operands (four-corner bounds).
inline std::pair<Rational, Rational> imul(const Rational& alo, const Rational& ahi,
                                          const Rational& blo, const Rational& bhi) {
    Rational c1 = alo * blo, c2 = alo * bhi, c3 = ahi * blo, c4 = ahi * bhi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

// Rule soundness tests. Each is a single exact inequality chain valid on the
// whole box; the replayer re-evaluates the identical conditions.
inline bool rule_applies(BoxRule rule, const ParamBox& b, const Interval& tangency) {
    const Rational half = rat(1, 2);
    switch (rule) {
        case BoxRule::AboveHalf:
            return b.c_lo >= half;
        case BoxRule::EmptyNecessity:
            // (1-l)^2 decreases in l, so its minimum on the box is at l_hi.
            return b.c_hi < (1 - b.l_hi) * (1 - b.l_hi);
        case BoxRule::EmptyUpperRatio:
            return b.c_lo > 2 * b.l_hi;
        case BoxRule::EmptyCurve: {
            // Upper bound of (c-l^2)(1-l) - c^2 over the box must be negative.
            auto [plo, phi] = imul(b.c_lo - b.l_hi * b.l_hi, b.c_hi - b.l_lo * b.l_lo,
                                   1 - b.l_hi, 1 - b.l_lo);
            (void)plo;
            return phi < b.c_lo * b.c_lo;
        }
        case BoxRule::EmptyLowerEnvelope:
            // l^2(1-l)+l increases in l and c(1-l) <= c_hi(1-l_lo); both
            // extremes sit at l_lo.
            return b.c_hi * (1 - b.l_lo) < envelope_cleared(b.l_lo);
        case BoxRule::EmptyLeftRange:
            // q5 decreases on [0,1]; positive at l_hi means positive throughout.
            return q5(b.l_hi) > 0;
        case BoxRule::EmptyRightRange:
            return q6(b.l_lo) < 0;
        case BoxRule::TangentColumn:
            // Sound for any box with c_hi <= 1/2: pointwise, either
            // 2l^2-4l+1 >= 0 and then c >= (1-l)^2 = (1 + (2l^2-4l+1))/2 >= 1/2,
            // or 2l^2-4l+1 < 0 and then c(1-l) >= l^2(1-l)+l =
            // ((1-l) - (1+l)(2l^2-4l+1))/2 > (1-l)/2, forcing c > 1/2.
            // The gates below restrict its use to small boxes meeting the
            // certified tangency enclosure, keeping the subdivision honest.
            return b.c_hi <= half && b.l_width() <= tangency.width() &&
                   b.l_lo <= tangency.hi && tangency.lo <= b.l_hi;
    }
    return false;
}

constexpr BoxRule kRuleOrder[] = {
    BoxRule::AboveHalf,     BoxRule::EmptyLeftRange,      BoxRule::EmptyRightRange,
    BoxRule::EmptyNecessity, BoxRule::EmptyUpperRatio,    BoxRule::EmptyLowerEnvelope,
    BoxRule::EmptyCurve,     BoxRule::TangentColumn,
};

inline std::optional<BoxRule> resolve(const ParamBox& b, const Interval& tangency) {
    for (BoxRule rule : kRuleOrder)
        if (rule_applies(rule, b, tangency)) return rule;
    return std::nullopt;
}

// The two polynomial identities behind the tangent rule, expanded by exact
// coefficient convolution: 2(1-l)^2 - 1 = 2l^2-4l+1 and
// (1-l) - 2(l^2(1-l)+l) = (1+l)(2l^2-4l+1).
inline bool tangent_identities_hold() {
    using Poly = std::vector<long>;  // coefficients by power of l
    auto mul = [](const Poly& a, const Poly& b) {
        Poly out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    auto add = [](Poly a, const Poly& b, long scale) {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
        return a;
    };
    const Poly one_minus_l{1, -1};
    const Poly q{1, -4, 2};  // 2l^2-4l+1

    Poly lhs1 = mul(one_minus_l, one_minus_l);
    for (auto& coeff : lhs1) coeff *= 2;
    lhs1 = add(lhs1, Poly{1}, -1);  // 2(1-l)^2 - 1
    if (lhs1 != q) return false;

    Poly envelope = add(mul(Poly{0, 0, 1}, one_minus_l), Poly{0, 1}, 1);  // l^2(1-l) + l
    Poly lhs2 = add(Poly{1, -1}, envelope, -2);                           // (1-l) - 2(...)
    Poly rhs2 = mul(Poly{1, 1}, q);                                       // (1+l)(2l^2-4l+1)
    while (lhs2.size() < rhs2.size()) lhs2.push_back(0);
    while (rhs2.size() < lhs2.size()) rhs2.push_back(0);
    return lhs2 == rhs2;
}

}  // namespace blue_detail

// Outer rational enclosure of the lambda range [2-sqrt(3), (3-sqrt(5))/2],
// from certified root isolation of the defining quadratics.
inline Interval blue_lambda_range(const Rational& precision = rat(1, 1L << 12)) {
    Interval unit(Rational(0), Rational(1));
    Interval left = isolate_smallest_root(IntegerPolynomial({1, -4, 1}), unit, precision);
    Interval right = isolate_smallest_root(IntegerPolynomial({1, -3, 1}), unit, precision);
    return Interval(left.lo, right.hi);
}

inline BlueCertificate certify_blue_lemma(int depth) {
    if (depth < 1) throw std::invalid_argument("subdivision depth must be >= 1");
    BlueCertificate cert;
    cert.depth = depth;
    Interval lrange = blue_lambda_range();
    cert.root = ParamBox{lrange.lo, lrange.hi, Rational(0), Rational(1)};
    cert.tangency =
        isolate_smallest_root(IntegerPolynomial({1, -4, 2}), Interval(Rational(0), Rational(1)),
                              rat(1, 1L << 10));

    struct Item {
        ParamBox box;
        int budget;
    };
    std::vector<Item> stack{{cert.root, depth}};
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        if (auto rule = blue_detail::resolve(item.box, cert.tangency)) {
            cert.leaves.push_back({item.box, *rule});
            continue;
        }
        if (item.budget == 0) {
            cert.undecided.push_back(item.box);
            continue;
        }
        const ParamBox& b = item.box;
        if (b.l_width() >= b.c_width()) {
            Rational mid = (b.l_lo + b.l_hi) / 2;
            stack.push_back({ParamBox{b.l_lo, mid, b.c_lo, b.c_hi}, item.budget - 1});
            stack.push_back({ParamBox{mid, b.l_hi, b.c_lo, b.c_hi}, item.budget - 1});
        } else {
            Rational mid = (b.c_lo + b.c_hi) / 2;
            stack.push_back({ParamBox{b.l_lo, b.l_hi, b.c_lo, mid}, item.budget - 1});
            stack.push_back({ParamBox{b.l_lo, b.l_hi, mid, b.c_hi}, item.budget - 1});
        }
    }
    auto box_less = [](const ParamBox& a, const ParamBox& b) {
        if (a.l_lo != b.l_lo) return a.l_lo < b.l_lo;
        if (a.c_lo != b.c_lo) return a.c_lo < b.c_lo;
        if (a.l_hi != b.l_hi) return a.l_hi < b.l_hi;
        return a.c_hi < b.c_hi;
    };
    std::sort(cert.leaves.begin(), cert.leaves.end(),
              [&](const BlueBoxLeaf& a, const BlueBoxLeaf& b) { return box_less(a.box, b.box); });
    std::sort(cert.undecided.begin(), cert.undecided.end(), box_less);
    return cert;
}

// Independent check of a certificate: the root box provably contains the
// constraint region, the leaves plus undecided boxes tile the root exactly,
// every leaf's rule condition re-verifies, and the tangent rule's supporting
// identities expand correctly.
inline bool replay_blue_certificate(const BlueCertificate& cert, std::string* error = nullptr) {
    using namespace blue_detail;
    auto fail = [&](const std::string& why) {
        if (error) *error = why;
        return false;
    };
    if (!tangent_identities_hold()) return fail("tangent rule identities do not expand");
    const ParamBox& root = cert.root;
    if (!(root.l_lo > 0 && root.l_hi < 1 && root.c_lo == 0 && root.c_hi == 1))
        return fail("root box has unexpected extent");
    if (!(q5(root.l_lo) > 0)) return fail("root box does not reach below 2-sqrt(3)");
    if (!(q6(root.l_hi) < 0)) return fail("root box does not reach above (3-sqrt(5))/2");
    if (!(root.l_hi <= rat(1, 2))) return fail("root box lambda range too wide");
    if (!(cert.tangency.lo < cert.tangency.hi && qt(cert.tangency.lo) > 0 &&
          qt(cert.tangency.hi) < 0))
        return fail("tangency enclosure does not bracket the root of 2l^2-4l+1");

    Rational area(0);
    std::vector<ParamBox> all;
    all.reserve(cert.leaves.size() + cert.undecided.size());
    for (const auto& leaf : cert.leaves) {
        if (!rule_applies(leaf.rule, leaf.box, cert.tangency))
            return fail(std::string("rule ") + to_string(leaf.rule) + " does not re-verify on " +
                        leaf.box.str());
        all.push_back(leaf.box);
    }
    for (const auto& box : cert.undecided) all.push_back(box);
    for (const auto& box : all) {
        if (box.l_lo < root.l_lo || box.l_hi > root.l_hi || box.c_lo < root.c_lo ||
            box.c_hi > root.c_hi || box.l_lo >= box.l_hi || box.c_lo >= box.c_hi)
            return fail("box " + box.str() + " is degenerate or leaves the root");
        area += box.area();
    }
    if (area != root.area())
        return fail("boxes do not tile the root: area " + rat_str(area) + " vs " +
                    rat_str(root.area()));
    std::sort(all.begin(), all.end(), [](const ParamBox& a, const ParamBox& b) {
        if (a.l_lo != b.l_lo) return a.l_lo < b.l_lo;
        return a.c_lo < b.c_lo;
    });
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const ParamBox& a = all[i];
            const ParamBox& b = all[j];
            if (b.l_lo >= a.l_hi) break;  // sorted by l_lo; no interior overlap possible
            if (a.l_lo < b.l_hi && b.l_lo < a.l_hi && a.c_lo < b.c_hi && b.c_lo < a.c_hi)
                return fail("boxes overlap: " + a.str() + " and " + b.str());
        }
    return true;
}

}  // namespace kmul
