#include <catch2/catch_amalgamated.hpp>

#include "kmul/decompose.hpp"
#include "kmul/random.hpp"
#include "kmul/serialize.hpp"

using namespace kmul;

namespace {
const IfsParams kThird = validate_params(rat(1, 3), rat(4, 9));

// Level-m membership by inverse-map search, independent of cover building:
// x belongs to some level-m basic interval iff some chain of inverse maps
// keeps it inside [0,1].
bool member_by_inverse_maps(const IfsParams& p, const Rational& x, int m) {
    if (x < 0 || x > 1) return false;
    if (m == 0) return true;
    for (int sym = 1; sym <= 3; ++sym) {
        Rational pre = (x - p.offset(sym)) / p.lambda;
        if (pre < 0 || pre > 1) continue;
        if (member_by_inverse_maps(p, pre, m - 1)) return true;
    }
    return false;
}
}  // namespace

TEST_CASE("exact corners") {
    DecompositionCertificate zero = decompose(kThird, rat(0), 5);
    REQUIRE(zero.word_x == "11111");
    REQUIRE(zero.word_y == "11111");
    REQUIRE(zero.x == 0);
    REQUIRE(zero.error_bound == 0);
    REQUIRE(verify_certificate(kThird, rat(0), zero));

    DecompositionCertificate one = decompose(kThird, rat(1), 5);
    REQUIRE(one.word_x == "33333");
    REQUIRE(one.x == 1);
    REQUIRE(one.error_bound == 0);
    REQUIRE(verify_certificate(kThird, rat(1), one));
}

TEST_CASE("decomposition of 1/2 at (1/3, 4/9)") {
    DecompositionCertificate cert = decompose(kThird, rat(1, 2), 10);
    REQUIRE(verify_certificate(kThird, rat(1, 2), cert));
    Rational bound = 3 * pow_int(rat(1, 3), static_cast<unsigned>(cert.scaling_power + 10));
    REQUIRE(cert.error_bound <= bound);
    Rational err = cert.x * cert.y - rat(1, 2);
    if (err < 0) err = -err;
    REQUIRE(err <= cert.error_bound);
    REQUIRE(interval_product(cert.rect_x, cert.rect_y).contains(rat(1, 2)));

    // Deterministic: identical inputs, identical certificates.
    DecompositionCertificate again = decompose(kThird, rat(1, 2), 10);
    REQUIRE(again.word_x == cert.word_x);
    REQUIRE(again.word_y == cert.word_y);
}

TEST_CASE("factors are attractor members at every level") {
    DecompositionCertificate cert = decompose(kThird, rat(3, 7), 8);
    REQUIRE(verify_certificate(kThird, rat(3, 7), cert));
    int max_level = cert.scaling_power + 8;
    for (int m = 1; m <= max_level; ++m) {
        REQUIRE(member_by_inverse_maps(kThird, cert.x, m));
        REQUIRE(member_by_inverse_maps(kThird, cert.y, m));
    }
}

TEST_CASE("error bound decays with depth") {
    Rational prev_bound;
    for (int depth = 2; depth <= 9; ++depth) {
        DecompositionCertificate cert = decompose(kThird, rat(2, 7), depth);
        REQUIRE(verify_certificate(kThird, rat(2, 7), cert));
        Rational cap = 3 * pow_int(rat(1, 3), static_cast<unsigned>(cert.scaling_power + depth));
        REQUIRE(cert.error_bound <= cap);
        if (depth > 2) REQUIRE(cert.error_bound < prev_bound);
        prev_bound = cert.error_bound;
    }
}

TEST_CASE("tampered certificates are rejected") {
    DecompositionCertificate cert = decompose(kThird, rat(5, 8), 9);
    REQUIRE(verify_certificate(kThird, rat(5, 8), cert));

    DecompositionCertificate flipped = cert;
    char& last = flipped.word_y.back();
    last = last == '1' ? '3' : '1';
    REQUIRE_FALSE(verify_certificate(kThird, rat(5, 8), flipped));

    DecompositionCertificate squeezed = cert;
    Rational true_err = squeezed.x * squeezed.y - rat(5, 8);
    if (true_err < 0) true_err = -true_err;
    REQUIRE(true_err > 0);
    squeezed.error_bound = true_err / 2;
    REQUIRE_FALSE(verify_certificate(kThird, rat(5, 8), squeezed));
}

TEST_CASE("rejects parameters outside the coverage region") {
    REQUIRE_THROWS_AS(decompose(validate_params(rat(1, 3), rat(43, 100)), rat(1, 2), 6),
                      not_in_coverage_region);
    REQUIRE_THROWS_AS(decompose(validate_params(rat(1, 3), rat(1, 4)), rat(1, 2), 6),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(decompose(kThird, rat(3, 2), 6), std::invalid_argument);
}

TEST_CASE("random stress across routes") {
    ParamSampler sampler(41);
    for (int i = 0; i < 12; ++i) {
        IfsParams p = sampler.purple_params();
        for (int k = 0; k < 10; ++k) {
            Rational u = sampler.unit_fraction(100000);
            DecompositionCertificate cert = decompose(p, u, 8);
            REQUIRE(verify_certificate(p, u, cert));
            Rational cap = 3 * pow_int(p.lambda, static_cast<unsigned>(cert.scaling_power + 8));
            REQUIRE(cert.error_bound <= cap);
        }
    }
}

TEST_CASE("certificates round-trip through JSON") {
    DecompositionCertificate cert = decompose(kThird, rat(7, 11), 10);
    nlohmann::json j = to_json(cert, kThird, rat(7, 11));
    ParsedDecomposition parsed = decomposition_from_json(j);
    REQUIRE(parsed.cert.word_x == cert.word_x);
    REQUIRE(parsed.cert.word_y == cert.word_y);
    REQUIRE(parsed.u == rat(7, 11));
    REQUIRE(verify_certificate(parsed.params, parsed.u, parsed.cert));
}
