#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "stforge/errors.hpp"
#include "stforge/qk.hpp"
#include "stforge/rational.hpp"
#include "stforge/zk.hpp"

#ifdef STFORGE_HAVE_GMP
#include <gmpxx.h>
#endif

using namespace stforge;

namespace {

ZkInt zk(Int a, Int b) { return ZkInt{a, b}; }

std::vector<ZkInt> sampled_values(int count, Int lo, Int hi, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(static_cast<long long>(lo),
                                                  static_cast<long long>(hi));
    std::vector<ZkInt> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(zk(dist(rng), dist(rng)));
    return out;
}

} // namespace

TEST_CASE("context rejects invalid k") {
    CHECK_THROWS_AS(RingContext(4), validation_error);
    CHECK_THROWS_AS(RingContext(9), validation_error);
    CHECK_THROWS_AS(RingContext(1), validation_error);
    CHECK_THROWS_AS(RingContext(0), validation_error);
    CHECK_THROWS_AS(RingContext(-2), validation_error);
    CHECK_NOTHROW(RingContext(2));
    CHECK_NOTHROW(RingContext(3));
    CHECK_NOTHROW(RingContext(2147483647));
}

TEST_CASE("integer helpers") {
    CHECK(isqrt_int(0) == 0);
    CHECK(isqrt_int(15) == 3);
    CHECK(isqrt_int(16) == 4);
    CHECK(isqrt_int(17) == 4);
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_floor(-7, 2) == 1);
    CHECK(mod_floor(7, 2) == 1);
    CHECK(ceil_div(7, 2) == 4);
    CHECK(ceil_div(-7, 2) == -3);
    CHECK(gcd_int(12, -18) == 6);
    CHECK(gcd_int(0, 0) == 0);
    Int big = Int(1) << 100;
    CHECK(int_from_string(int_to_string(big)) == big);
    CHECK(int_from_string("-17") == -17);
    CHECK_THROWS_AS(int_from_string("12x"), validation_error);
    CHECK_THROWS_AS(int_from_string(""), validation_error);
    CHECK_THROWS_AS(checked_mul(big, big), overflow_error);
    CHECK_THROWS_AS(checked_add(Int(1) << 126, Int(1) << 126), stforge::overflow_error);
    CHECK(narrow_i64(42) == 42);
    CHECK_THROWS_AS(narrow_i64(big), stforge::overflow_error);
}

TEST_CASE("rational helpers") {
    Rat r = rat_make(6, -4);
    CHECK(r.num == -3);
    CHECK(r.den == 2);
    CHECK_THROWS_AS(rat_make(1, 0), validation_error);
    CHECK(rat_to_string(rat_add(Rat{1, 2}, Rat{1, 3})) == "5/6");
    CHECK(rat_to_string(rat_mul(Rat{2, 3}, Rat{3, 2})) == "1/1");
    CHECK(rat_le(Rat{1, 3}, Rat{1, 2}));
    CHECK(rat_lt(Rat{-1, 2}, Rat{0, 1}));
    CHECK(rat_cmp(Rat{2, 4}, Rat{1, 2}) == std::strong_ordering::equal);
    Rat parsed = rat_from_string("19/20");
    CHECK(parsed.num == 19);
    CHECK(parsed.den == 20);
    CHECK(rat_from_string("3").den == 1);
    CHECK_THROWS_AS(rat_from_string("1/0"), validation_error);
    CHECK_THROWS_AS(rat_from_string("a/b"), validation_error);
}

TEST_CASE("ring product and norm examples") {
    RingContext k2(2), k3(3), k5(5);
    CHECK(zk_mul(k2, zk(1, 1), zk(1, -1)) == zk(-1, 0));
    CHECK(zk_mul(k2, zk(3, 2), zk(3, -2)) == zk(1, 0));
    CHECK(zk_add(zk(1, 1), zk(2, -1)) == zk(3, 0));
    (void)k3;
    CHECK(zk_norm(k2, zk(1, 2)) == -7);
    CHECK(zk_norm(k2, zk(3, 2)) == 1);
    CHECK(zk_norm(k5, zk(2, 1)) == -1);
}

TEST_CASE("comparison examples") {
    RingContext k2(2), k3(3);
    CHECK(zk_cmp(k2, zk(1, 1), zk(2, 0)) == std::strong_ordering::greater);
    CHECK(zk_cmp(k2, zk(0, 0), zk(0, 0)) == std::strong_ordering::equal);
    CHECK(zk_cmp(k3, zk(2, 0), zk(0, 1)) == std::strong_ordering::greater);
}

TEST_CASE("ring axioms on sampled triples") {
    for (int64_t k : {int64_t(2), int64_t(3), int64_t(7)}) {
        RingContext ctx(k);
        auto vals = sampled_values(60, -1000000, 1000000, 0x5eed0 + static_cast<uint64_t>(k));
        for (size_t i = 0; i + 2 < vals.size(); i += 3) {
            const ZkInt &x = vals[i], &y = vals[i + 1], &z = vals[i + 2];
            CHECK(zk_add(x, y) == zk_add(y, x));
            CHECK(zk_mul(ctx, x, y) == zk_mul(ctx, y, x));
            CHECK(zk_add(zk_add(x, y), z) == zk_add(x, zk_add(y, z)));
            CHECK(zk_mul(ctx, zk_mul(ctx, x, y), z) == zk_mul(ctx, x, zk_mul(ctx, y, z)));
            CHECK(zk_mul(ctx, x, zk_add(y, z)) ==
                  zk_add(zk_mul(ctx, x, y), zk_mul(ctx, x, z)));
            CHECK(zk_norm(ctx, zk_mul(ctx, x, y)) == zk_norm(ctx, x) * zk_norm(ctx, y));
            CHECK(zk_mul(ctx, zk_conj(x), zk_conj(y)) == zk_conj(zk_mul(ctx, x, y)));
        }
    }
}

#ifdef STFORGE_HAVE_GMP
TEST_CASE("comparison agrees with high-precision evaluation") {
    for (int64_t k : {int64_t(2), int64_t(3), int64_t(5), int64_t(7), int64_t(11)}) {
        RingContext ctx(k);
        mpf_set_default_prec(512); // well past 64 decimal digits
        mpf_class sqrt_k;
        mpf_sqrt_ui(sqrt_k.get_mpf_t(), static_cast<unsigned long>(k));
        auto vals = sampled_values(80, -1000000, 1000000, 0xdeca1 + static_cast<uint64_t>(k));
        for (size_t i = 0; i + 1 < vals.size(); i += 2) {
            const ZkInt &x = vals[i], &y = vals[i + 1];
            mpf_class diff = mpf_class(static_cast<long>(x.a - y.a)) +
                             mpf_class(static_cast<long>(x.b - y.b)) * sqrt_k;
            auto ord = zk_cmp(ctx, x, y);
            if (cmp(diff, 1e-30) > 0)
                CHECK(ord == std::strong_ordering::greater);
            else if (cmp(diff, -1e-30) < 0)
                CHECK(ord == std::strong_ordering::less);
            else {
                CHECK(x == y);
                CHECK(ord == std::strong_ordering::equal);
            }
        }
    }
}
#endif

TEST_CASE("rationalization examples") {
    RingContext k2(2);
    CHECK(qk_from_ratio(k2, zk(1, 1), zk(1, 1)) == qk_from_int(1));
    CHECK(qk_from_ratio(k2, zk(2, 1), zk(1, 1)) == qk_from_zk(zk(0, 1)));
    CHECK(qk_from_ratio(k2, zk(1, 0), zk(1, 1)) == qk_from_zk(zk(-1, 1)));
    CHECK_THROWS_AS(qk_from_ratio(k2, zk(1, 0), zk(0, 0)), validation_error);
}

TEST_CASE("field operation examples") {
    RingContext k2(2);
    QkNum root2 = qk_from_zk(zk(0, 1));
    CHECK(qk_mul(k2, root2, root2) == qk_from_int(2));
    QkNum x = qk_make(zk(3, -5), 7);
    CHECK(qk_add(x, qk_from_int(0)) == x);
    CHECK(qk_add(qk_make(zk(1, 1), 2), qk_make(zk(1, -1), 2)) == qk_from_int(1));
}

TEST_CASE("integrality probe") {
    CHECK(qk_as_zk(qk_make(zk(3, 1), 1)) == zk(3, 1));
    CHECK(!qk_as_zk(qk_make(zk(1, 0), 2)).has_value());
    CHECK(qk_as_zk(qk_make(zk(2, 2), 2)) == zk(1, 1));
}

TEST_CASE("canonical form invariants on sampled values") {
    RingContext ctx(3);
    auto vals = sampled_values(40, -500, 500, 0xcafe);
    std::mt19937_64 rng(0xd1ce);
    std::uniform_int_distribution<long long> dd(1, 40);
    for (size_t i = 0; i + 1 < vals.size(); i += 2) {
        if (zk_is_zero(vals[i + 1])) continue;
        QkNum q = qk_from_ratio(ctx, vals[i], vals[i + 1]);
        // re-canonicalizing is the identity
        CHECK(qk_make(q.u, q.d) == q);
        CHECK(q.d >= 1);
        CHECK(gcd_int(gcd_int(abs_int(q.u.a), abs_int(q.u.b)), q.d) == 1);
        // cancellation: (x*z)/(y*z) = x/y
        ZkInt z = zk(dd(rng), dd(rng));
        CHECK(qk_from_ratio(ctx, zk_mul(ctx, vals[i], z), zk_mul(ctx, vals[i + 1], z)) == q);
        // inverse round trip
        if (!qk_is_zero(q)) CHECK(qk_mul(ctx, q, qk_inv(ctx, q)) == qk_from_int(1));
        // sign is consistent with comparison against zero
        CHECK(qk_sign(ctx, q) == (qk_cmp(ctx, q, qk_from_int(0)) == std::strong_ordering::less
                                      ? -1
                                      : (qk_is_zero(q) ? 0 : 1)));
    }
}

TEST_CASE("to_string output is readable") {
    CHECK(zk_to_string(zk(3, -2)) == "3-2*rt");
    CHECK(qk_to_string(qk_make(zk(1, 1), 3)) == "(1+1*rt)/3");
}
