#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmul/interval.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// Parameters of the three-map system {x -> Lx, x -> Lx + c - L, x -> Lx + 1 - L}
// on [0,1]. The maps' level-1 images are [0,L], [c-L,c] and [1-L,1]; validity
// means the first two overlap while the third stays clear:
//   L <= c <= 2L   and   c + L < 1.
struct IfsParams {
    Rational lambda;
    Rational c;
    Rational d;  // 1 - lambda
    bool valid = false;
    std::string invalid_reason;

    // Translation of map i in {1,2,3}.
    Rational offset(int symbol) const {
        switch (symbol) {
            case 1: return Rational(0);
            case 2: return c - lambda;
            case 3: return d;
        }
        throw std::invalid_argument("map symbol must be 1, 2 or 3");
    }
};

inline IfsParams validate_params(const Rational& lambda, const Rational& c) {
    IfsParams p;
    p.lambda = lambda;
    p.c = c;
    p.d = 1 - lambda;
    if (!(lambda > 0 && lambda < 1)) {
        p.invalid_reason = "0 < lambda < 1 fails (lambda = " + rat_str(lambda) + ")";
    } else if (c < lambda) {
        p.invalid_reason = "lambda <= c fails (" + rat_str(c) + " < " + rat_str(lambda) + ")";
    } else if (c > 2 * lambda) {
        p.invalid_reason = "c <= 2*lambda fails (" + rat_str(c) + " > " + rat_str(2 * lambda) + ")";
    } else if (c + lambda >= 1) {
        p.invalid_reason = "c < 1 - lambda fails (" + rat_str(c) + " >= " + rat_str(p.d) + ")";
    } else {
        p.valid = true;
    }
    return p;
}

inline const IfsParams& require_valid(const IfsParams& p) {
    if (!p.valid) throw std::invalid_argument("invalid parameters: " + p.invalid_reason);
    return p;
}

// Finite coding over {1,2,3}; the empty word addresses [0,1].
using Word = std::string;

inline bool word_ok(const Word& w) {
    for (char ch : w)
        if (ch < '1' || ch > '3') return false;
    return true;
}

// Image of [0,1] under the composition indexed by w (leftmost symbol applied
// last). Exact rational endpoints; width lambda^|w|.
inline Interval word_interval(const IfsParams& p, const Word& w) {
    require_valid(p);
    if (!word_ok(w)) throw std::invalid_argument("word symbols must be in {1,2,3}");
    Rational lo(0), hi(1);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Rational b = p.offset(*it - '0');
        lo = p.lambda * lo + b;
        hi = p.lambda * hi + b;
    }
    return Interval(std::move(lo), std::move(hi));
}

// The three next-level basic intervals inside a basic interval [a, a+t].
// Under validity the first two merge, leaving [a, a+ct] and [a+dt, a+t].
inline IntervalUnion children(const IfsParams& p, const Interval& basic) {
    require_valid(p);
    const Rational& a = basic.lo;
    const Rational t = basic.width();
    std::vector<Interval> kids;
    kids.reserve(3);
    for (int sym = 1; sym <= 3; ++sym) {
        Rational b = p.offset(sym);
        kids.emplace_back(a + t * b, a + t * (b + p.lambda));
    }
    return IntervalUnion::normalized(std::move(kids));
}

inline Interval child_interval(const IfsParams& p, const Interval& basic, int symbol) {
    const Rational& a = basic.lo;
    const Rational t = basic.width();
    Rational b = p.offset(symbol);
    return Interval(a + t * b, a + t * (b + p.lambda));
}

// A union of closed windows whose endpoints are endpoints of basic intervals
// at base_level. Covers are built relative to a window.
struct Window {
    std::vector<Interval> pieces;  // disjoint, ascending
    int base_level = 0;

    bool contains(const Interval& j) const {
        for (const auto& piece : pieces)
            if (piece.contains(j)) return true;
        return false;
    }
    bool intersects(const Interval& j) const {
        for (const auto& piece : pieces)
            if (piece.intersects(j)) return true;
        return false;
    }
    IntervalUnion as_union() const { return IntervalUnion::normalized(pieces); }
    std::string str() const { return as_union().str(); }
};

inline Window window_unit() { return Window{{Interval(Rational(0), Rational(1))}, 0}; }

// [1-L, 1]: the level-1 image of the rightmost map.
inline Window window_tail(const IfsParams& p) {
    require_valid(p);
    return Window{{Interval(p.d, Rational(1))}, 1};
}

// [c-L^2, 1]: its left endpoint is the left endpoint of the level-2 basic
// interval addressed by "23".
inline Window window_upper(const IfsParams& p) {
    require_valid(p);
    return Window{{Interval(p.c - p.lambda * p.lambda, Rational(1))}, 2};
}

// [c-L, c] u [1-L, 1]: the level-1 images of the middle and right maps.
inline Window window_split(const IfsParams& p) {
    require_valid(p);
    return Window{{Interval(p.c - p.lambda, p.c), Interval(p.d, Rational(1))}, 1};
}

// Level-n cover of a window: the union of all level-n basic intervals that
// lie inside the window, stored merged. word_count counts the length-n words
// whose interval lies inside (distinct words may address equal intervals).
struct Cover {
    int level = 0;
    Window window;
    IntervalUnion parts;
    mpz_class word_count;
};

// Builds covers for one parameter pair, memoizing the full-interval covers
// C_m (level-m cover of [0,1]) and the level-m endpoint sets. Iterating the
// three maps on a merged union is exact: each map is an increasing affine
// bijection, so it maps unions part by part.
class CoverBuilder {
public:
    explicit CoverBuilder(const IfsParams& p) : p_(require_valid(p)) {
        full_.push_back(IntervalUnion::normalized({Interval(Rational(0), Rational(1))}));
    }

    const IfsParams& params() const { return p_; }

    const IntervalUnion& full_cover(int m) {
        if (m < 0) throw std::invalid_argument("cover level must be nonnegative");
        while (static_cast<int>(full_.size()) <= m) {
            const IntervalUnion& prev = full_.back();
            std::vector<Interval> next;
            next.reserve(prev.size() * 3);
            for (int sym = 1; sym <= 3; ++sym) {
                IntervalUnion img = prev.affine(p_.lambda, p_.offset(sym));
                next.insert(next.end(), img.parts().begin(), img.parts().end());
            }
            full_.push_back(IntervalUnion::normalized(std::move(next)));
        }
        return full_[static_cast<std::size_t>(m)];
    }

    Cover windowed_cover(const Window& w, int n) {
        if (n < w.base_level)
            throw std::invalid_argument("cover level below window base level");
        Cover cover;
        cover.level = n;
        cover.window = w;
        std::vector<Interval> collected;
        collect_inside(Interval(Rational(0), Rational(1)), 0, n, w, collected, cover.word_count);
        cover.parts = IntervalUnion::normalized(std::move(collected));
        return cover;
    }

    // All endpoints of level-n basic intervals inside the window, sorted and
    // deduplicated. Every value is a point of the attractor: endpoints are
    // images of the fixed points 0 and 1.
    std::vector<Rational> endpoint_samples(const Window& w, int n) {
        std::vector<Rational> out;
        collect_endpoints(Interval(Rational(0), Rational(1)), 0, n, w, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    const std::vector<Rational>& endpoints_global(int m) {
        while (static_cast<int>(endpoints_.size()) <= m) {
            if (endpoints_.empty()) {
                endpoints_.push_back({Rational(0), Rational(1)});
                continue;
            }
            const auto& prev = endpoints_.back();
            std::vector<Rational> next;
            next.reserve(prev.size() * 3);
            for (int sym = 1; sym <= 3; ++sym) {
                Rational b = p_.offset(sym);
                for (const auto& e : prev) next.push_back(p_.lambda * e + b);
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            endpoints_.push_back(std::move(next));
        }
        return endpoints_[static_cast<std::size_t>(m)];
    }

    void collect_inside(const Interval& j, int level, int n, const Window& w,
                        std::vector<Interval>& out, mpz_class& words) {
        if (!w.intersects(j)) return;
        if (w.contains(j)) {
            const IntervalUnion& tail = full_cover(n - level);
            for (const auto& part : tail.parts())
                out.emplace_back(j.lo + j.width() * part.lo, j.lo + j.width() * part.hi);
            mpz_class subtree;
            mpz_ui_pow_ui(subtree.get_mpz_t(), 3, static_cast<unsigned>(n - level));
            words += subtree;
            return;
        }
        if (level == n) return;  // straddles the window boundary: excluded
        for (int sym = 1; sym <= 3; ++sym)
            collect_inside(child_interval(p_, j, sym), level + 1, n, w, out, words);
    }

    void collect_endpoints(const Interval& j, int level, int n, const Window& w,
                           std::vector<Rational>& out) {
        if (!w.intersects(j)) return;
        if (w.contains(j)) {
            for (const auto& e : endpoints_global(n - level)) out.push_back(j.lo + j.width() * e);
            return;
        }
        if (level == n) return;
        for (int sym = 1; sym <= 3; ++sym)
            collect_endpoints(child_interval(p_, j, sym), level + 1, n, w, out);
    }

    IfsParams p_;
    std::vector<IntervalUnion> full_;
    std::vector<std::vector<Rational>> endpoints_;
};

constexpr int kDefaultCoverDepthCap = 24;

inline Cover build_cover(const IfsParams& p, const Window& w, int n,
                         int depth_cap = kDefaultCoverDepthCap) {
    if (n > depth_cap)
        throw std::invalid_argument("cover level " + std::to_string(n) +
                                    " exceeds depth cap " + std::to_string(depth_cap));
    CoverBuilder builder(p);
    return builder.windowed_cover(w, n);
}

inline std::vector<Rational> endpoint_samples(const IfsParams& p, const Window& w, int n,
                                              int depth_cap = kDefaultCoverDepthCap) {
    if (n > depth_cap) throw std::invalid_argument("endpoint level exceeds depth cap");
    CoverBuilder builder(p);
    return builder.endpoint_samples(w, n);
}

}  // namespace kmul
