#pragma once

#include <compare>
#include <optional>
#include <string>

#include "stforge/zk.hpp"

namespace stforge {

/**
 * QkNum: an element (a + b*sqrt(k)) / d of Q(sqrt(k)) in canonical form.
 *
 * Canonical means d >= 1 and gcd(a, b, d) = 1, so two QkNum are equal as
 * real numbers iff their field tuples are identical. Every constructor
 * path below re-establishes the invariant; dedup keys rely on it.
 */
struct QkNum {
    ZkInt u;   // numerator
    Int d = 1; // denominator, > 0

    friend bool operator==(const QkNum&, const QkNum&) = default;
};

// Reduce (u, d) to canonical form. d must be nonzero.
inline QkNum qk_make(const ZkInt& u, Int d) {
    if (d == 0) throw validation_error("zero denominator");
    ZkInt nu = u;
    Int nd = d;
    if (nd < 0) {
        nu = zk_neg(nu);
        nd = checked_neg(nd);
    }
    Int g = gcd_int(gcd_int(nu.a, nu.b), nd);
    if (g > 1) {
        nu.a /= g;
        nu.b /= g;
        nd /= g;
    }
    return {nu, nd};
}

inline QkNum qk_from_zk(const ZkInt& x) { return {x, 1}; }
inline QkNum qk_from_int(Int v) { return {{v, 0}, 1}; }

// num / den, rationalized by the conjugate: num*conj(den) / norm(den).
inline QkNum qk_from_ratio(const RingContext& ctx, const ZkInt& num, const ZkInt& den) {
    if (zk_is_zero(den)) throw validation_error("division by zero in Q(sqrt k)");
    ZkInt u = zk_mul(ctx, num, zk_conj(den));
    Int d = zk_norm(ctx, den);
    return qk_make(u, d);
}

inline QkNum qk_add(const QkNum& x, const QkNum& y) {
    ZkInt u = zk_add(zk_scale(x.u, y.d), zk_scale(y.u, x.d));
    return qk_make(u, checked_mul(x.d, y.d));
}

inline QkNum qk_sub(const QkNum& x, const QkNum& y) {
    ZkInt u = zk_sub(zk_scale(x.u, y.d), zk_scale(y.u, x.d));
    return qk_make(u, checked_mul(x.d, y.d));
}

inline QkNum qk_neg(const QkNum& x) { return {zk_neg(x.u), x.d}; }

inline QkNum qk_mul(const RingContext& ctx, const QkNum& x, const QkNum& y) {
    return qk_make(zk_mul(ctx, x.u, y.u), checked_mul(x.d, y.d));
}

// x * z for integral z; avoids the general product's re-rationalization.
inline QkNum qk_mul_zk(const RingContext& ctx, const QkNum& x, const ZkInt& z) {
    return qk_make(zk_mul(ctx, x.u, z), x.d);
}

inline QkNum qk_inv(const RingContext& ctx, const QkNum& x) {
    if (zk_is_zero(x.u)) throw validation_error("inverse of zero");
    // (u/d)^-1 = d*conj(u) / norm(u)
    return qk_make(zk_scale(zk_conj(x.u), x.d), zk_norm(ctx, x.u));
}

// Canonical forms make equality a tuple comparison.
inline bool qk_eq(const QkNum& x, const QkNum& y) { return x == y; }

inline bool qk_is_zero(const QkNum& x) { return zk_is_zero(x.u); }

inline std::strong_ordering qk_cmp(const RingContext& ctx, const QkNum& x, const QkNum& y) {
    // denominators are positive, so cross-multiplication preserves order
    return zk_cmp(ctx, zk_scale(x.u, y.d), zk_scale(y.u, x.d));
}

inline int qk_sign(const RingContext& ctx, const QkNum& x) { return zk_sign(ctx, x.u); }

// The underlying ring element when the canonical denominator is 1.
inline std::optional<ZkInt> qk_as_zk(const QkNum& x) {
    if (x.d == 1) return x.u;
    return std::nullopt;
}

inline std::string qk_to_string(const QkNum& x) {
    return "(" + zk_to_string(x.u) + ")/" + int_to_string(x.d);
}

} // namespace stforge
