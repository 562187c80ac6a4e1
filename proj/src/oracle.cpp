#include "stforge/oracle.hpp"

#include "stforge/caps.hpp"
#include "stforge/errors.hpp"

namespace stforge {

Int brute_richness(const RingContext& ctx, const Line& line,
                   const std::vector<std::pair<ZkInt, ZkInt>>& points) {
    if (static_cast<Int>(points.size()) > kOraclePointCap)
        throw validation_error("point list exceeds the oracle cap");
    Int count = 0;
    for (const auto& [x, y] : points) {
        QkNum lhs = qk_add(qk_mul_zk(ctx, line.slope, x), line.intercept);
        if (qk_eq(lhs, qk_from_zk(y))) ++count;
    }
    return count;
}

std::vector<QkNum> brute_slope_set(const SlopeParams& sp, const RingContext& ctx) {
    if (sp.band_lo > sp.t) throw validation_error("slope magnitude band is empty");
    // Keep raw (p, q) representatives; a candidate is new iff no kept pair is
    // cross-multiplication equal: p*q' == p'*q in the ring.
    std::vector<std::pair<ZkInt, ZkInt>> kept;
    auto same_ratio = [&](const std::pair<ZkInt, ZkInt>& lhs, const std::pair<ZkInt, ZkInt>& rhs) {
        return zk_mul(ctx, lhs.first, rhs.second) == zk_mul(ctx, rhs.first, lhs.second);
    };
    const Int signs[2] = {1, -1};
    for (Int m1 = sp.band_lo; m1 <= sp.t; ++m1)
        for (Int s1 : signs)
            for (Int m2 = sp.band_lo; m2 <= sp.t; ++m2)
                for (Int s2 : signs)
                    for (Int m3 = sp.band_lo; m3 <= sp.t; ++m3)
                        for (Int s3 : signs)
                            for (Int m4 = sp.band_lo; m4 <= sp.t; ++m4)
                                for (Int s4 : signs) {
                                    ZkInt p{s1 * m1, s2 * m2};
                                    ZkInt q{s3 * m3, s4 * m4};
                                    if (gcd_int(p.a, p.b) > sp.gcd_cap) continue;
                                    if (gcd_int(zk_norm(ctx, p), zk_norm(ctx, q)) > sp.gcd_cap)
                                        continue;
                                    bool fresh = true;
                                    for (const auto& rep : kept)
                                        if (same_ratio(rep, {p, q})) {
                                            fresh = false;
                                            break;
                                        }
                                    if (fresh) kept.emplace_back(p, q);
                                }
    std::vector<QkNum> values;
    values.reserve(kept.size());
    for (const auto& [p, q] : kept) values.push_back(qk_from_ratio(ctx, p, q));
    std::sort(values.begin(), values.end(),
              [&](const QkNum& a, const QkNum& b) { return qk_cmp(ctx, a, b) < 0; });
    return values;
}

Int brute_energy(const std::vector<ZkInt>& A, const std::vector<ZkInt>& B) {
    Int pairs;
    if (__builtin_mul_overflow(static_cast<Int>(A.size()), static_cast<Int>(B.size()), &pairs) ||
        pairs > kOracleQuadrupleCap)
        throw validation_error("quadruple scan |A|*|B| exceeds the oracle cap");
    Int count = 0;
    for (const ZkInt& a1 : A)
        for (const ZkInt& b1 : B) {
            ZkInt s1 = zk_add(a1, b1);
            for (const ZkInt& a2 : A)
                for (const ZkInt& b2 : B)
                    if (s1 == zk_add(a2, b2)) count = checked_add(count, 1);
        }
    return count;
}

Int brute_projection(const RingContext& ctx, const std::vector<std::pair<ZkInt, ZkInt>>& points,
                     const QkNum& slope) {
    if (static_cast<Int>(points.size()) > kOraclePointCap)
        throw validation_error("point list exceeds the oracle cap");
    std::vector<QkNum> values;
    values.reserve(points.size());
    for (const auto& [x, y] : points)
        values.push_back(qk_sub(qk_from_zk(y), qk_mul_zk(ctx, slope, x)));
    std::sort(values.begin(), values.end(),
              [&](const QkNum& a, const QkNum& b) { return qk_cmp(ctx, a, b) < 0; });
    Int distinct = 0;
    for (size_t i = 0; i < values.size(); ++i)
        if (i == 0 || !qk_eq(values[i], values[i - 1])) ++distinct;
    return distinct;
}

} // namespace stforge
