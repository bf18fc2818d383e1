#pragma once

#include <cstdint>
#include <random>

#include "kmul/ifs.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// Deterministic rational samplers for property checks and stress tests.
// Samples use bounded denominators so exact arithmetic stays fast.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t raw() { return rng_(); }

    // Uniform-ish k/den with 0 <= k <= den.
    Rational unit_fraction(long den_max = 4096) {
        long den = 2 + static_cast<long>(rng_() % static_cast<std::uint64_t>(den_max - 1));
        long num = static_cast<long>(rng_() % static_cast<std::uint64_t>(den + 1));
        return rat(num, den);
    }

    // Rational strictly inside (lo, hi) on a 2^-20 grid.
    Rational between(const Rational& lo, const Rational& hi) {
        const long grid = 1L << 20;
        long k = 1 + static_cast<long>(rng_() % static_cast<std::uint64_t>(grid - 1));
        return lo + (hi - lo) * rat(k, grid);
    }

    // Valid parameters with lambda in (lambda_lo, lambda_hi). Validity needs
    // lambda < 1/2 (else c >= lambda >= 1 - lambda kills c < 1 - lambda).
    IfsParams valid_params(const Rational& lambda_lo = Rational(1, 20),
                           const Rational& lambda_hi = Rational(19, 20)) {
        for (;;) {
            Rational lambda = between(lambda_lo, lambda_hi);
            if (lambda >= rat(1, 2)) continue;
            Rational c_lo = lambda;
            Rational c_hi = std::min(Rational(2 * lambda), Rational(1 - lambda));
            if (c_hi <= c_lo) continue;
            Rational c = between(c_lo, c_hi);
            IfsParams p = validate_params(lambda, c);
            if (p.valid) return p;
        }
    }

    // Valid parameters with single-limb denominators, for deep-cover work
    // where endpoint denominators grow like den(lambda)^n.
    IfsParams valid_params_small() {
        for (;;) {
            long qd = 8 + static_cast<long>(rng_() % 57);  // 8..64
            long qn = 1 + static_cast<long>(rng_() % static_cast<std::uint64_t>(qd / 2));
            Rational lambda = rat(qn, qd);
            if (lambda >= rat(1, 2) || lambda <= rat(1, 20)) continue;
            long cd = 8 + static_cast<long>(rng_() % 89);  // 8..96
            Rational c_hi = std::min(Rational(2 * lambda), Rational(1 - lambda));
            long p_lo = static_cast<long>(mpz_class(lambda.get_num() * cd / lambda.get_den()).get_si()) + 1;
            long p_hi = static_cast<long>(mpz_class(c_hi.get_num() * cd / c_hi.get_den()).get_si());
            if (p_hi < p_lo) continue;
            long pc = p_lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(p_hi - p_lo + 1));
            IfsParams p = validate_params(lambda, rat(pc, cd));
            if (p.valid) return p;
        }
    }

    // Valid parameters satisfying (1-lambda)^2 <= c as well.
    IfsParams purple_params() {
        for (;;) {
            Rational lambda = between(rat(27, 100), rat(49, 100));
            Rational necessity = (1 - lambda) * (1 - lambda);
            Rational c_lo = std::max(lambda, necessity);
            Rational c_hi = std::min(Rational(2 * lambda), Rational(1 - lambda));
            if (c_hi <= c_lo) continue;
            long grid = 1L << 20;
            long k = static_cast<long>(rng_() % static_cast<std::uint64_t>(grid));
            Rational c = c_lo + (c_hi - c_lo) * rat(k, grid);  // includes the lower boundary
            IfsParams p = validate_params(lambda, c);
            if (p.valid && c >= (1 - lambda) * (1 - lambda)) return p;
        }
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace kmul
