#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmul/rational.hpp"

namespace kmul {

// Closed interval [lo, hi] with exact rational endpoints. Degenerate point
// intervals are allowed.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    }

    Rational width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    // Strict interior containment of a point.
    bool interior_contains(const Rational& x) const { return lo < x && x < hi; }

    Interval scaled(const Rational& k) const {
        if (k <= 0) throw std::invalid_argument("scale must be positive");
        return Interval(lo * k, hi * k);
    }
    Interval shifted(const Rational& offset) const { return Interval(lo + offset, hi + offset); }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }

    std::string str() const { return "[" + rat_str(lo) + "," + rat_str(hi) + "]"; }
};

// Normalized finite union of disjoint closed intervals, kept strictly
// increasing: parts[k].hi < parts[k+1].lo. Intervals that touch or overlap
// are merged, so the representation of a point set is unique and coverage
// checks reduce to exact equality.
class IntervalUnion {
public:
    IntervalUnion() = default;

    static IntervalUnion normalized(std::vector<Interval> raw) {
        std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        std::vector<Interval> merged;
        for (auto& piece : raw) {
            if (!merged.empty() && piece.lo <= merged.back().hi) {
                if (piece.hi > merged.back().hi) merged.back().hi = piece.hi;
            } else {
                merged.push_back(std::move(piece));
            }
        }
        IntervalUnion out;
        out.parts_ = std::move(merged);
        return out;
    }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    bool contains(const Rational& x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const Rational& v, const Interval& p) { return v < p.lo; });
        if (it == parts_.begin()) return false;
        return std::prev(it)->contains(x);
    }

    // A connected interval lies in the union iff it lies in a single part.
    bool contains(const Interval& piece) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), piece.lo,
                                   [](const Rational& v, const Interval& p) { return v < p.lo; });
        if (it == parts_.begin()) return false;
        return std::prev(it)->contains(piece);
    }

    bool contains(const IntervalUnion& other) const {
        return std::all_of(other.parts_.begin(), other.parts_.end(),
                           [&](const Interval& p) { return contains(p); });
    }

    bool intersects(const Interval& piece) const {
        for (const auto& p : parts_) {
            if (p.lo > piece.hi) break;
            if (p.intersects(piece)) return true;
        }
        return false;
    }

    bool operator==(const IntervalUnion& o) const { return parts_ == o.parts_; }

    Rational measure() const {
        Rational total(0);
        for (const auto& p : parts_) total += p.width();
        return total;
    }

    IntervalUnion unite(const IntervalUnion& other) const {
        std::vector<Interval> raw = parts_;
        raw.insert(raw.end(), other.parts_.begin(), other.parts_.end());
        return normalized(std::move(raw));
    }

    IntervalUnion intersect(const Interval& box) const {
        std::vector<Interval> out;
        for (const auto& p : parts_) {
            Rational lo = std::max(p.lo, box.lo);
            Rational hi = std::min(p.hi, box.hi);
            if (lo <= hi) out.emplace_back(lo, hi);
        }
        return normalized(std::move(out));
    }

    // Closure of box \ this, as a union. Together with this union it covers
    // the box, overlapping only at shared endpoints.
    IntervalUnion complement_in(const Interval& box) const {
        std::vector<Interval> gaps;
        Rational cursor = box.lo;
        for (const auto& p : parts_) {
            if (p.hi < box.lo || p.lo > box.hi) continue;
            Rational lo = std::max(p.lo, box.lo);
            if (lo > cursor) gaps.emplace_back(cursor, lo);
            cursor = std::max(cursor, std::min(p.hi, box.hi));
        }
        if (cursor < box.hi) gaps.emplace_back(cursor, box.hi);
        return normalized(std::move(gaps));
    }

    // Image under x -> scale*x + offset, scale > 0. Affine bijections map
    // unions part by part.
    IntervalUnion affine(const Rational& scale, const Rational& offset) const {
        if (scale <= 0) throw std::invalid_argument("affine scale must be positive");
        IntervalUnion out;
        out.parts_.reserve(parts_.size());
        for (const auto& p : parts_)
            out.parts_.emplace_back(p.lo * scale + offset, p.hi * scale + offset);
        return out;
    }

    std::string str() const {
        if (parts_.empty()) return "{}";
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += " ";
            out += parts_[i].str();
        }
        return out;
    }

private:
    std::vector<Interval> parts_;
};

inline IntervalUnion union_normalize(std::vector<Interval> raw) {
    return IntervalUnion::normalized(std::move(raw));
}

inline IntervalUnion union_complement_in(const IntervalUnion& u, const Interval& box) {
    return u.complement_in(box);
}

}  // namespace kmul
