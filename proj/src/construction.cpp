#include "stforge/construction.hpp"

#include <map>

#include "stforge/errors.hpp"

namespace stforge {

// --- grid -------------------------------------------------------------------

GridParams make_grid_params(const RingContext& ctx, Int n_scale) {
    if (n_scale < 1) throw validation_error("scale N must be >= 1");
    return {ctx, n_scale, isqrt_int(n_scale)};
}

GridParams make_grid_params_from_side(const RingContext& ctx, Int side) {
    if (side < 1) throw validation_error("side must be >= 1");
    return {ctx, checked_mul(side, side), side};
}

CoordSet gen_A(const GridParams& params) {
    const Int s = params.side;
    std::vector<ZkInt> elems;
    elems.reserve(static_cast<size_t>(narrow_i64(checked_mul(4, checked_mul(s, s)))));
    for (Int a = -s; a < s; ++a)
        for (Int b = -s; b < s; ++b) elems.push_back({a, b});
    const RingContext ctx = params.ctx;
    std::sort(elems.begin(), elems.end(),
              [&](const ZkInt& x, const ZkInt& y) { return zk_cmp(ctx, x, y) < 0; });
    return {params, std::move(elems)};
}

PointSet gen_points(const GridParams& params) {
    CoordSet coords = gen_A(params);
    Int n = static_cast<Int>(coords.elems.size());
    return {std::move(coords), checked_mul(n, n)};
}

std::vector<std::pair<ZkInt, ZkInt>> PointSet::materialize(Int cap) const {
    if (size > cap)
        throw validation_error("point set of size " + int_to_string(size) +
                               " exceeds materialization cap " + int_to_string(cap));
    std::vector<std::pair<ZkInt, ZkInt>> pts;
    pts.reserve(static_cast<size_t>(narrow_i64(size)));
    for_each([&](const ZkInt& x, const ZkInt& y) { pts.emplace_back(x, y); });
    return pts;
}

// --- slopes -----------------------------------------------------------------

SlopeParams make_slope_params(Int m_scale, const Rat& c, Int gcd_cap) {
    if (m_scale < 1) throw validation_error("scale M must be >= 1");
    if (gcd_cap < 1) throw validation_error("gcd cap must be >= 1");
    if (rat_cmp(c, {0, 1}) <= 0 || rat_cmp(c, {1, 1}) >= 0)
        throw validation_error("cutoff c must satisfy 0 < c < 1");
    Int t = isqrt_int(m_scale);
    Int band_lo = ceil_div(checked_mul(c.num, t), c.den);
    if (band_lo < 1) band_lo = 1;
    if (band_lo > t)
        throw validation_error("slope magnitude band [ceil(c*t), t] is empty");
    return {m_scale, c, t, band_lo, gcd_cap};
}

bool slope_filter_accepts(const RingContext& ctx, const SlopeParams& sp,
                          Int p1, Int p2, Int q1, Int q2) {
    auto in_band = [&](Int v) {
        Int m = abs_int(v);
        return m >= sp.band_lo && m <= sp.t;
    };
    if (!in_band(p1) || !in_band(p2) || !in_band(q1) || !in_band(q2)) return false;
    if (gcd_int(p1, p2) > sp.gcd_cap) return false;
    Int np = zk_norm(ctx, {p1, p2});
    Int nq = zk_norm(ctx, {q1, q2});
    return gcd_int(np, nq) <= sp.gcd_cap;
}

std::vector<Slope> gen_slopes(const SlopeParams& sp, const RingContext& ctx) {
    if (sp.band_lo > sp.t) throw validation_error("slope magnitude band is empty");
    std::vector<Slope> raw;
    const Int signs[2] = {1, -1};
    for (Int m1 = sp.band_lo; m1 <= sp.t; ++m1)
        for (Int s1 : signs)
            for (Int m2 = sp.band_lo; m2 <= sp.t; ++m2)
                for (Int s2 : signs)
                    for (Int m3 = sp.band_lo; m3 <= sp.t; ++m3)
                        for (Int s3 : signs)
                            for (Int m4 = sp.band_lo; m4 <= sp.t; ++m4)
                                for (Int s4 : signs) {
                                    Int p1 = s1 * m1, p2 = s2 * m2, q1 = s3 * m3, q2 = s4 * m4;
                                    if (!slope_filter_accepts(ctx, sp, p1, p2, q1, q2)) continue;
                                    QkNum value = qk_from_ratio(ctx, {p1, p2}, {q1, q2});
                                    raw.push_back({value,
                                                   {narrow_i64(p1), narrow_i64(p2),
                                                    narrow_i64(q1), narrow_i64(q2)}});
                                }
    std::sort(raw.begin(), raw.end(), [&](const Slope& x, const Slope& y) {
        auto c = qk_cmp(ctx, x.value, y.value);
        if (c != 0) return c < 0;
        return x.witness < y.witness;
    });
    auto last = std::unique(raw.begin(), raw.end(), [](const Slope& x, const Slope& y) {
        return qk_eq(x.value, y.value);
    });
    raw.erase(last, raw.end());
    raw.shrink_to_fit();
    return raw;
}

// --- lines ------------------------------------------------------------------

Line make_line(const RingContext& ctx, const QkNum& slope, const ZkInt& a, const ZkInt& b) {
    return {slope, qk_sub(qk_from_zk(b), qk_mul_zk(ctx, slope, a))};
}

Line line_from_key(const RingContext&, const LineFamily& fam, Int x_key, Int y_key) {
    return {fam.slope, qk_make({x_key, y_key}, fam.denom)};
}

LineFamily gen_line_family(const RingContext& ctx, const QkNum& slope, Int anchor_side) {
    if (anchor_side < 1) throw validation_error("anchor side must be >= 1");
    LineFamily fam;
    fam.slope = slope;
    fam.coef_p = slope.u.a;
    fam.coef_q = slope.u.b;
    fam.denom = slope.d;
    const Int sp = anchor_side;
    const Int p = fam.coef_p, q = fam.coef_q, d = fam.denom;
    const Int kq = checked_mul(ctx.k, q);

    std::map<std::pair<Int, Int>, std::vector<std::pair<Int, Int>>> classes;
    for (Int a1 = -sp; a1 < sp; ++a1)
        for (Int a2 = -sp; a2 < sp; ++a2) {
            Int u = checked_add(checked_mul(p, a1), checked_mul(kq, a2));
            Int v = checked_add(checked_mul(q, a1), checked_mul(p, a2));
            classes[{mod_floor(u, d), mod_floor(v, d)}].emplace_back(floor_div(u, d),
                                                                     floor_div(v, d));
        }

    for (auto& [key, offsets] : classes) {
        TauClass tc;
        tc.cu = key.first;
        tc.cv = key.second;
        std::sort(offsets.begin(), offsets.end());
        offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
        tc.offsets = std::move(offsets);
        Int count = 0;
        sweep_box_union(tc, sp,
                        [&](Int i_lo, Int i_hi, const std::vector<std::pair<Int, Int>>& runs) {
                            Int width = 0;
                            for (const auto& [lo, hi] : runs)
                                width = checked_add(width, checked_sub(hi, lo) + 1);
                            count = checked_add(count,
                                                checked_mul(checked_sub(i_hi, i_lo) + 1, width));
                        });
        tc.line_count = count;
        fam.line_count = checked_add(fam.line_count, count);
        fam.classes.push_back(std::move(tc));
    }
    return fam;
}

LineSet gen_lines(const GridParams& params, const std::vector<Slope>& slopes) {
    const Int sp = params.side / 2;
    // side 1 leaves no anchors: the line set is legitimately empty
    if (sp == 0) return LineSet{params, sp, {}, 0, 0};
    const Int anchor_card = checked_mul(4, checked_mul(sp, sp));

    LineSet out{params,
                sp,
                {},
                checked_mul(checked_mul(anchor_card, anchor_card),
                            static_cast<Int>(slopes.size())),
                0};
    out.families.reserve(slopes.size());
    for (const Slope& sl : slopes) {
        LineFamily fam = gen_line_family(params.ctx, sl.value, sp);
        out.line_count = checked_add(out.line_count, fam.line_count);
        out.families.push_back(std::move(fam));
    }
    return out;
}

std::vector<Line> gen_lines_reference(const GridParams& params, const std::vector<Slope>& slopes) {
    const RingContext ctx = params.ctx;
    const Int sp = params.side / 2;
    if (sp == 0) return {};
    std::vector<Line> out;
    for (const Slope& sl : slopes) {
        std::vector<QkNum> taus;
        for (Int a1 = -sp; a1 < sp; ++a1)
            for (Int a2 = -sp; a2 < sp; ++a2) {
                QkNum sa = qk_mul_zk(ctx, sl.value, {a1, a2});
                for (Int b1 = -sp; b1 < sp; ++b1)
                    for (Int b2 = -sp; b2 < sp; ++b2)
                        taus.push_back(qk_sub(qk_from_zk({b1, b2}), sa));
            }
        std::sort(taus.begin(), taus.end(), [&](const QkNum& x, const QkNum& y) {
            return qk_cmp(ctx, x, y) < 0;
        });
        auto last = std::unique(taus.begin(), taus.end(),
                                [](const QkNum& x, const QkNum& y) { return qk_eq(x, y); });
        taus.erase(last, taus.end());
        for (const QkNum& tau : taus) out.push_back({sl.value, tau});
    }
    return out;
}

std::vector<Line> sample_lines(const LineSet& lines, Int target_count) {
    std::vector<Line> out;
    if (target_count < 1 || lines.line_count == 0) return out;
    const Int stride = ceil_div(lines.line_count, target_count);
    const RingContext ctx = lines.grid.ctx;
    const Int last = lines.line_count - 1;
    Int idx = 0;
    for (const LineFamily& fam : lines.families) {
        const Int d = fam.denom;
        for_each_line_key(fam, lines.anchor_side, [&](const TauClass& tc, Int i, Int j) {
            if (idx % stride == 0 || idx == last)
                out.push_back(line_from_key(ctx, fam,
                                            checked_sub(checked_mul(d, i), tc.cu),
                                            checked_sub(checked_mul(d, j), tc.cv)));
            ++idx;
        });
    }
    return out;
}

} // namespace stforge
