#include "stforge/applications.hpp"

#include <tuple>

#include "stforge/caps.hpp"
#include "stforge/errors.hpp"

namespace stforge {

namespace {

bool mul_fits(Int a, Int b, Int* out) { return !__builtin_mul_overflow(a, b, out); }

Int square_sum_of_runs(std::vector<std::tuple<Int, Int, Int>>& keys) {
    std::sort(keys.begin(), keys.end());
    Int sum = 0;
    for (size_t i = 0; i < keys.size();) {
        size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        Int r = static_cast<Int>(j - i);
        sum = checked_add(sum, checked_mul(r, r));
        i = j;
    }
    return sum;
}

} // namespace

ProjectionReport project(const GridParams& params, const QkNum& slope, Int n_slopes) {
    const RingContext ctx = params.ctx;
    const Int s = params.side;
    const Int p = slope.u.a, q = slope.u.b, d = slope.d;
    const Int kq = checked_mul(ctx.k, q);
    const Int card_a = checked_mul(4, checked_mul(s, s));
    Int n_keys;
    if (!mul_fits(card_a, card_a, &n_keys) || n_keys > kPairKeyCap)
        throw validation_error("projection scan |A|^2 exceeds the internal key cap; "
                               "reduce the side");

    // y - slope*x = ((d*y1 - u(x)) + (d*y2 - v(x))*sqrt(k)) / d with a fixed
    // denominator, so raw integer pairs are faithful keys.
    std::vector<std::pair<Int, Int>> keys;
    keys.reserve(static_cast<size_t>(n_keys));
    for (Int x1 = -s; x1 < s; ++x1)
        for (Int x2 = -s; x2 < s; ++x2) {
            Int u = checked_add(checked_mul(p, x1), checked_mul(kq, x2));
            Int v = checked_add(checked_mul(q, x1), checked_mul(p, x2));
            for (Int y1 = -s; y1 < s; ++y1)
                for (Int y2 = -s; y2 < s; ++y2)
                    keys.emplace_back(checked_sub(checked_mul(d, y1), u),
                                      checked_sub(checked_mul(d, y2), v));
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    ProjectionReport rep;
    rep.slope = slope;
    rep.n_classes = static_cast<Int>(keys.size());
    if (n_slopes > 0) {
        Int root = isqrt_int(n_slopes);
        rep.expected_lo = checked_mul(card_a, root);
        rep.expected_hi = checked_mul(card_a, checked_add(root, 1));
    }
    return rep;
}

Int lattice_projection_size(Int n, Int p, Int q) {
    if (n < 1) throw validation_error("lattice side must be >= 1");
    if (q == 0) throw validation_error("projection denominator q must be nonzero");
    if (gcd_int(p, q) != 1) throw validation_error("p and q must be coprime");
    const Int top = n - 1;
    Int vmin = checked_sub(q < 0 ? checked_mul(q, top) : 0, p > 0 ? checked_mul(p, top) : 0);
    Int vmax = checked_sub(q > 0 ? checked_mul(q, top) : 0, p < 0 ? checked_mul(p, top) : 0);
    Int span = checked_add(checked_sub(vmax, vmin), 1);
    if (span > kPairKeyCap)
        throw validation_error("projection value range exceeds the internal cap");
    std::vector<char> seen(static_cast<size_t>(span), 0);
    for (Int x = 0; x < n; ++x)
        for (Int y = 0; y < n; ++y)
            seen[static_cast<size_t>(q * y - p * x - vmin)] = 1;
    Int count = 0;
    for (char c : seen) count += c;
    return count;
}

Int additive_energy(const std::vector<ZkInt>& A, const std::vector<ZkInt>& B) {
    Int n_keys;
    if (!mul_fits(static_cast<Int>(A.size()), static_cast<Int>(B.size()), &n_keys) ||
        n_keys > kPairKeyCap)
        throw validation_error("energy scan |A|*|B| exceeds the internal key cap");
    std::vector<std::tuple<Int, Int, Int>> keys;
    keys.reserve(static_cast<size_t>(n_keys));
    for (const ZkInt& a : A)
        for (const ZkInt& b : B)
            keys.emplace_back(checked_add(a.a, b.a), checked_add(a.b, b.b), Int(1));
    return square_sum_of_runs(keys);
}

EnergyReport energy_sum(const GridParams& params, const std::vector<Slope>& slopes) {
    const RingContext ctx = params.ctx;
    CoordSet A = gen_A(params);
    const Int card_a = static_cast<Int>(A.elems.size());
    Int n_keys;
    if (!mul_fits(card_a, card_a, &n_keys) || n_keys > kPairKeyCap)
        throw validation_error("energy scan |A|^2 exceeds the internal key cap; "
                               "reduce the side");

    EnergyReport rep;
    rep.per_slope.resize(slopes.size());
    const int n_slopes = static_cast<int>(slopes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int si = 0; si < n_slopes; ++si) {
        const QkNum& x = slopes[static_cast<size_t>(si)].value;
        std::vector<QkNum> xb;
        xb.reserve(A.elems.size());
        for (const ZkInt& b : A.elems) xb.push_back(qk_mul_zk(ctx, x, b));
        std::vector<std::tuple<Int, Int, Int>> keys;
        keys.reserve(static_cast<size_t>(n_keys));
        for (const ZkInt& a : A.elems) {
            QkNum qa = qk_from_zk(a);
            for (const QkNum& m : xb) {
                QkNum sum = qk_add(qa, m);
                keys.emplace_back(sum.u.a, sum.u.b, sum.d);
            }
        }
        rep.per_slope[static_cast<size_t>(si)] = {x, square_sum_of_runs(keys)};
    }
    for (const auto& [slope, e] : rep.per_slope) rep.total = checked_add(rep.total, e);
    if (!slopes.empty()) {
        Int a3 = checked_mul(card_a, checked_mul(card_a, card_a));
        Int root = isqrt_int(static_cast<Int>(slopes.size()));
        rep.reference_lo = checked_mul(a3, root);
        rep.reference_hi = checked_mul(a3, checked_add(root, 1));
    }
    return rep;
}

} // namespace stforge
