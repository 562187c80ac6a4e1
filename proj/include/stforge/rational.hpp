#pragma once

#include <compare>
#include <string>

#include "stforge/int128.hpp"

namespace stforge {

/**
 * Rat: exact rational with 128-bit numerator and denominator.
 * Always reduced, denominator > 0. Used for bounds, means and ratios in
 * reports; never rounded.
 */
struct Rat {
    Int num = 0;
    Int den = 1;

    friend bool operator==(const Rat&, const Rat&) = default;
};

inline Rat rat_make(Int num, Int den) {
    if (den == 0) throw validation_error("rational with zero denominator");
    if (den < 0) {
        num = checked_neg(num);
        den = checked_neg(den);
    }
    Int g = gcd_int(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

inline Rat rat_from_int(Int v) { return {v, 1}; }

inline Rat rat_add(const Rat& x, const Rat& y) {
    return rat_make(checked_add(checked_mul(x.num, y.den), checked_mul(y.num, x.den)),
                    checked_mul(x.den, y.den));
}

inline Rat rat_sub(const Rat& x, const Rat& y) {
    return rat_make(checked_sub(checked_mul(x.num, y.den), checked_mul(y.num, x.den)),
                    checked_mul(x.den, y.den));
}

inline Rat rat_mul(const Rat& x, const Rat& y) {
    return rat_make(checked_mul(x.num, y.num), checked_mul(x.den, y.den));
}

inline Rat rat_div(const Rat& x, const Rat& y) {
    if (y.num == 0) throw validation_error("rational division by zero");
    return rat_make(checked_mul(x.num, y.den), checked_mul(x.den, y.num));
}

inline std::strong_ordering rat_cmp(const Rat& x, const Rat& y) {
    Int lhs = checked_mul(x.num, y.den);
    Int rhs = checked_mul(y.num, x.den);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline bool rat_le(const Rat& x, const Rat& y) { return rat_cmp(x, y) <= 0; }
inline bool rat_lt(const Rat& x, const Rat& y) { return rat_cmp(x, y) < 0; }

inline std::string rat_to_string(const Rat& x) {
    return int_to_string(x.num) + "/" + int_to_string(x.den);
}

// "p/q" or plain integer literal.
inline Rat rat_from_string(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return rat_from_int(int_from_string(s));
    return rat_make(int_from_string(s.substr(0, slash)), int_from_string(s.substr(slash + 1)));
}

} // namespace stforge
