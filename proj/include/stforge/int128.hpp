#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <limits>

#include "stforge/errors.hpp"

namespace stforge {

/**
 * Int: the integer type backing all exact arithmetic.
 *
 * 128-bit with explicit overflow checks. Every arithmetic helper below
 * throws stforge::overflow_error instead of wrapping; callers that need
 * wider range must shrink their parameters (see README, "Integer range").
 */
using Int = __int128;

constexpr Int INT_MAX_VALUE = ~(Int(1) << 127);
constexpr Int INT_MIN_VALUE = Int(1) << 127;

inline Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw overflow_error("int128 add overflow");
    return r;
}

inline Int checked_sub(Int x, Int y) {
    Int r;
    if (__builtin_sub_overflow(x, y, &r)) throw overflow_error("int128 sub overflow");
    return r;
}

inline Int checked_mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw overflow_error("int128 mul overflow");
    return r;
}

inline Int checked_neg(Int x) {
    if (x == INT_MIN_VALUE) throw overflow_error("int128 negate overflow");
    return -x;
}

inline Int abs_int(Int x) {
    return x < 0 ? checked_neg(x) : x;
}

inline int sign_int(Int x) {
    return x < 0 ? -1 : (x > 0 ? 1 : 0);
}

// gcd(|x|, |y|), always non-negative; gcd(0, 0) = 0.
inline Int gcd_int(Int x, Int y) {
    unsigned __int128 a = x < 0 ? -(unsigned __int128)x : (unsigned __int128)x;
    unsigned __int128 b = y < 0 ? -(unsigned __int128)y : (unsigned __int128)y;
    while (b != 0) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return (Int)a;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt_int(Int n) {
    if (n < 0) throw validation_error("isqrt of negative value");
    if (n < 2) return n;
    unsigned __int128 un = (unsigned __int128)n;
    // Newton iteration from a power-of-two upper bound.
    int bits = 0;
    for (unsigned __int128 t = un; t != 0; t >>= 1) bits++;
    unsigned __int128 x = (unsigned __int128)1 << ((bits + 1) / 2);
    while (true) {
        unsigned __int128 y = (x + un / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while (x * x > un) x--;
    return (Int)x;
}

// floor division (rounds toward negative infinity).
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q--;
    return q;
}

inline Int ceil_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) q++;
    return q;
}

// true Euclidean remainder in [0, |b|)
inline Int mod_floor(Int a, Int b) {
    Int r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

inline std::string int_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    char buf[48];
    int pos = 48;
    while (u != 0) {
        buf[--pos] = char('0' + (int)(u % 10));
        u /= 10;
    }
    if (neg) buf[--pos] = '-';
    return std::string(buf + pos, 48 - pos);
}

inline Int int_from_string(std::string_view s) {
    if (s.empty()) throw validation_error("empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw validation_error("invalid integer literal");
    Int v = 0;
    for (; i < s.size(); i++) {
        if (s[i] < '0' || s[i] > '9') throw validation_error("invalid integer literal");
        v = checked_add(checked_mul(v, 10), Int(s[i] - '0'));
    }
    return neg ? checked_neg(v) : v;
}

inline int64_t narrow_i64(Int v) {
    if (v > Int(std::numeric_limits<int64_t>::max()) ||
        v < Int(std::numeric_limits<int64_t>::min()))
        throw overflow_error("value does not fit in 64 bits");
    return (int64_t)v;
}

} // namespace stforge
