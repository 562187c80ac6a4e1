#pragma once

#include <compare>
#include <string>

#include "stforge/int128.hpp"

namespace stforge {

/**
 * RingContext: fixes the radicand k of the quadratic ring Z[sqrt(k)].
 *
 * k must be an integer >= 2 that is not a perfect square; this makes the
 * representation a + b*sqrt(k) unique and keeps sqrt(k) real, so ordering
 * and all geometric predicates are decidable in integers.
 */
struct RingContext {
    int64_t k;

    explicit RingContext(int64_t k_) : k(k_) {
        if (k < 2) throw validation_error("k must be >= 2 (non-square positive integer)");
        Int r = isqrt_int(Int(k));
        if (r * r == Int(k)) throw validation_error("k must be non-square");
    }
};

/**
 * ZkInt: an element a + b*sqrt(k) of Z[sqrt(k)].
 *
 * The context is passed to the operations that need k rather than stored,
 * so values stay two machine words and mixing contexts is a caller bug the
 * tests guard against.
 */
struct ZkInt {
    Int a = 0; // rational part
    Int b = 0; // sqrt(k) coefficient

    friend bool operator==(const ZkInt&, const ZkInt&) = default;
};

inline ZkInt zk_add(const ZkInt& x, const ZkInt& y) {
    return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}

inline ZkInt zk_sub(const ZkInt& x, const ZkInt& y) {
    return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
}

inline ZkInt zk_neg(const ZkInt& x) {
    return {checked_neg(x.a), checked_neg(x.b)};
}

// (a1 + b1√k)(a2 + b2√k) = (a1a2 + k b1b2) + (a1b2 + a2b1)√k
inline ZkInt zk_mul(const RingContext& ctx, const ZkInt& x, const ZkInt& y) {
    Int a = checked_add(checked_mul(x.a, y.a), checked_mul(Int(ctx.k), checked_mul(x.b, y.b)));
    Int b = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
    return {a, b};
}

inline ZkInt zk_scale(const ZkInt& x, Int m) {
    return {checked_mul(x.a, m), checked_mul(x.b, m)};
}

inline ZkInt zk_conj(const ZkInt& x) {
    return {x.a, checked_neg(x.b)};
}

// Field norm a^2 - k b^2; multiplicative, and nonzero for x != 0 since k
// is not a square.
inline Int zk_norm(const RingContext& ctx, const ZkInt& x) {
    return checked_sub(checked_mul(x.a, x.a), checked_mul(Int(ctx.k), checked_mul(x.b, x.b)));
}

inline bool zk_is_zero(const ZkInt& x) { return x.a == 0 && x.b == 0; }

// Sign of a + b*sqrt(k), decided in integers: when a and b disagree in
// sign the comparison reduces to a^2 vs k b^2 (equality is impossible for
// b != 0 because k is non-square).
inline int zk_sign(const RingContext& ctx, const ZkInt& x) {
    if (x.b == 0) return sign_int(x.a);
    if (x.a == 0) return sign_int(x.b);
    if (x.a > 0 && x.b > 0) return 1;
    if (x.a < 0 && x.b < 0) return -1;
    Int lhs = checked_mul(x.a, x.a);
    Int rhs = checked_mul(Int(ctx.k), checked_mul(x.b, x.b));
    int mag = lhs > rhs ? 1 : -1; // lhs == rhs cannot happen here
    return x.a > 0 ? mag : -mag;
}

inline std::strong_ordering zk_cmp(const RingContext& ctx, const ZkInt& x, const ZkInt& y) {
    int s = zk_sign(ctx, zk_sub(x, y));
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::string zk_to_string(const ZkInt& x) {
    return int_to_string(x.a) + (x.b < 0 ? "" : "+") + int_to_string(x.b) + "*rt";
}

} // namespace stforge
