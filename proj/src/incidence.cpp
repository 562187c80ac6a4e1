#include "stforge/incidence.hpp"

#include <cstdlib>
#include <map>
#include <optional>

#include "stforge/caps.hpp"
#include "stforge/errors.hpp"

namespace stforge {

namespace {

bool mul_fits(Int a, Int b, Int* out) { return !__builtin_mul_overflow(a, b, out); }

// ST_FORGE_MAX_CELLS caps |L|*|A| per richness computation when set.
void enforce_cell_cap(Int n_lines, Int card_a) {
    const char* raw = std::getenv("ST_FORGE_MAX_CELLS");
    if (!raw || !*raw) return;
    const Int cap = int_from_string(raw);
    Int work;
    if (!mul_fits(n_lines, card_a, &work) || work > cap)
        throw validation_error("richness work |L|*|A| exceeds ST_FORGE_MAX_CELLS=" +
                               int_to_string(cap));
}

struct PrefixGrid {
    Int qu_min = 0, qu_max = -1, qv_min = 0, qv_max = -1;
    size_t hs = 0;           // H + 1
    std::vector<int32_t> ps; // (W+1) x (H+1) inclusive-prefix table
    Int npts = 0;

    Int rect(Int qu_lo, Int qu_hi, Int qv_lo, Int qv_hi) const {
        if (npts == 0) return 0;
        if (qu_lo < qu_min) qu_lo = qu_min;
        if (qv_lo < qv_min) qv_lo = qv_min;
        if (qu_hi > qu_max) qu_hi = qu_max;
        if (qv_hi > qv_max) qv_hi = qv_max;
        if (qu_lo > qu_hi || qv_lo > qv_hi) return 0;
        size_t i0 = static_cast<size_t>(qu_lo - qu_min);
        size_t i1 = static_cast<size_t>(qu_hi - qu_min) + 1;
        size_t j0 = static_cast<size_t>(qv_lo - qv_min);
        size_t j1 = static_cast<size_t>(qv_hi - qv_min) + 1;
        return Int(ps[i1 * hs + j1]) - ps[i0 * hs + j1] - ps[i1 * hs + j0] + ps[i0 * hs + j0];
    }
};

// Points of A bucketed by residue class, as prefix grids aligned with
// fam.classes (index-parallel). Returns nullopt when over the cell budget.
std::optional<std::vector<PrefixGrid>> build_family_grids(const GridParams& params,
                                                          const LineFamily& fam) {
    const Int s = params.side;
    const Int p = fam.coef_p, q = fam.coef_q, d = fam.denom;
    const Int kq = checked_mul(params.ctx.k, q);

    std::map<std::pair<Int, Int>, size_t> cls_index;
    for (size_t ci = 0; ci < fam.classes.size(); ++ci)
        cls_index.emplace(std::make_pair(fam.classes[ci].cu, fam.classes[ci].cv), ci);

    std::vector<std::vector<std::pair<Int, Int>>> pts(fam.classes.size());
    for (Int x1 = -s; x1 < s; ++x1)
        for (Int x2 = -s; x2 < s; ++x2) {
            Int u = checked_add(checked_mul(p, x1), checked_mul(kq, x2));
            Int v = checked_add(checked_mul(q, x1), checked_mul(p, x2));
            auto it = cls_index.find({mod_floor(u, d), mod_floor(v, d)});
            if (it != cls_index.end())
                pts[it->second].emplace_back(floor_div(u, d), floor_div(v, d));
        }

    Int cells = 0;
    std::vector<PrefixGrid> grids(fam.classes.size());
    for (size_t ci = 0; ci < grids.size(); ++ci) {
        if (pts[ci].empty()) continue;
        PrefixGrid& g = grids[ci];
        g.qu_min = g.qu_max = pts[ci][0].first;
        g.qv_min = g.qv_max = pts[ci][0].second;
        for (const auto& [qu, qv] : pts[ci]) {
            if (qu < g.qu_min) g.qu_min = qu;
            if (qu > g.qu_max) g.qu_max = qu;
            if (qv < g.qv_min) g.qv_min = qv;
            if (qv > g.qv_max) g.qv_max = qv;
        }
        Int w1 = checked_add(checked_sub(g.qu_max, g.qu_min), 2);
        Int h1 = checked_add(checked_sub(g.qv_max, g.qv_min), 2);
        Int sz;
        if (!mul_fits(w1, h1, &sz)) return std::nullopt;
        cells = checked_add(cells, sz);
        if (cells > kCellBudget) return std::nullopt;
        g.hs = static_cast<size_t>(h1);
        g.ps.assign(static_cast<size_t>(sz), 0);
        for (const auto& [qu, qv] : pts[ci]) {
            size_t i = static_cast<size_t>(qu - g.qu_min) + 1;
            size_t j = static_cast<size_t>(qv - g.qv_min) + 1;
            ++g.ps[i * g.hs + j];
        }
        const size_t w = static_cast<size_t>(w1);
        for (size_t i = 1; i < w; ++i)
            for (size_t j = 1; j < g.hs; ++j)
                g.ps[i * g.hs + j] += g.ps[i * g.hs + j - 1] + g.ps[(i - 1) * g.hs + j] -
                                      g.ps[(i - 1) * g.hs + j - 1];
        g.npts = static_cast<Int>(pts[ci].size());
    }
    return grids;
}

struct FamilyPartial {
    Int total = 0;
    Int r_min = -1, r_max = -1;
    std::vector<int64_t> hist;
    std::vector<std::pair<Line, Int>> per_line;
};

// Counts every line of one family; prefix-grid queries when they fit,
// line_richness otherwise.
FamilyPartial scan_family(const GridParams& params, const LineFamily& fam, Int anchor_side,
                          bool fill_per_line, const CoordSet& A) {
    FamilyPartial part;
    part.hist.assign(A.elems.size() + 1, 0);
    const Int s = params.side;
    const Int d = fam.denom;
    const RingContext ctx = params.ctx;

    auto record = [&](const TauClass& tc, Int i, Int j, Int r) {
        part.total += r;
        ++part.hist[static_cast<size_t>(r)];
        if (part.r_min < 0 || r < part.r_min) part.r_min = r;
        if (r > part.r_max) part.r_max = r;
        if (fill_per_line)
            part.per_line.emplace_back(line_from_key(ctx, fam,
                                                     checked_sub(checked_mul(d, i), tc.cu),
                                                     checked_sub(checked_mul(d, j), tc.cv)),
                                       r);
    };

    auto grids = build_family_grids(params, fam);
    if (grids) {
        const TauClass* base = fam.classes.data();
        for_each_line_key(fam, anchor_side, [&](const TauClass& tc, Int i, Int j) {
            const PrefixGrid& g = (*grids)[static_cast<size_t>(&tc - base)];
            record(tc, i, j, g.rect(-s - i, s - 1 - i, -s - j, s - 1 - j));
        });
    } else {
        for_each_line_key(fam, anchor_side, [&](const TauClass& tc, Int i, Int j) {
            Line ln = line_from_key(ctx, fam, checked_sub(checked_mul(d, i), tc.cu),
                                    checked_sub(checked_mul(d, j), tc.cv));
            record(tc, i, j, line_richness(A, ln));
        });
    }
    return part;
}

RichnessReport richness_core(const GridParams& params, const LineSet& lines, bool fill_per_line) {
    if (params.ctx.k != lines.grid.ctx.k)
        throw validation_error("point grid and line set use different rings");
    CoordSet A = gen_A(params);
    const Int card_a = static_cast<Int>(A.elems.size());
    enforce_cell_cap(lines.line_count, card_a);
    Int sat;
    if (!mul_fits(lines.line_count, card_a, &sat))
        throw overflow_error("total incidence bound |L|*|A| exceeds 128 bits");

    RichnessReport rep;
    rep.n_lines = lines.line_count;
    std::vector<FamilyPartial> parts(lines.families.size());
    const int nfam = static_cast<int>(lines.families.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int fi = 0; fi < nfam; ++fi)
        parts[static_cast<size_t>(fi)] = scan_family(params, lines.families[static_cast<size_t>(fi)],
                                                     lines.anchor_side, fill_per_line, A);

    std::vector<int64_t> hist(A.elems.size() + 1, 0);
    bool seen = false;
    for (const FamilyPartial& part : parts) {
        rep.total = checked_add(rep.total, part.total);
        if (part.r_min >= 0) {
            if (!seen) {
                rep.r_min = part.r_min;
                rep.r_max = part.r_max;
                seen = true;
            } else {
                if (part.r_min < rep.r_min) rep.r_min = part.r_min;
                if (part.r_max > rep.r_max) rep.r_max = part.r_max;
            }
        }
        for (size_t r = 0; r < part.hist.size(); ++r) hist[r] += part.hist[r];
        if (fill_per_line)
            rep.per_line.insert(rep.per_line.end(), part.per_line.begin(), part.per_line.end());
    }
    for (size_t r = 0; r < hist.size(); ++r)
        if (hist[r] > 0) rep.histogram.emplace_back(static_cast<Int>(r), Int(hist[r]));
    if (rep.n_lines > 0) rep.mean = rat_make(rep.total, rep.n_lines);
    return rep;
}

} // namespace

Int line_richness(const CoordSet& A, const Line& line) {
    const RingContext ctx = A.params.ctx;
    Int count = 0;
    for (const ZkInt& x : A.elems) {
        QkNum y = qk_add(qk_mul_zk(ctx, line.slope, x), line.intercept);
        auto z = qk_as_zk(y);
        if (z && A.contains(*z)) ++count;
    }
    return count;
}

RichnessReport richness_report(const GridParams& params, const LineSet& lines, Int m_scale,
                               Int per_line_cap) {
    if (m_scale < 1) throw validation_error("scale M must be >= 1");
    RichnessReport rep = richness_core(params, lines, lines.line_count <= per_line_cap);
    rep.target = rat_make(params.n_scale, m_scale);
    return rep;
}

RichnessReport richness_report_reference(const GridParams& params, const std::vector<Line>& lines,
                                         Int m_scale) {
    if (m_scale < 1) throw validation_error("scale M must be >= 1");
    CoordSet A = gen_A(params);
    enforce_cell_cap(static_cast<Int>(lines.size()), static_cast<Int>(A.elems.size()));
    RichnessReport rep;
    rep.n_lines = static_cast<Int>(lines.size());
    rep.target = rat_make(params.n_scale, m_scale);
    std::vector<int64_t> hist(A.elems.size() + 1, 0);
    bool seen = false;
    for (const Line& ln : lines) {
        Int r = line_richness(A, ln);
        rep.total = checked_add(rep.total, r);
        ++hist[static_cast<size_t>(r)];
        if (!seen) {
            rep.r_min = rep.r_max = r;
            seen = true;
        } else {
            if (r < rep.r_min) rep.r_min = r;
            if (r > rep.r_max) rep.r_max = r;
        }
        rep.per_line.emplace_back(ln, r);
    }
    for (size_t r = 0; r < hist.size(); ++r)
        if (hist[r] > 0) rep.histogram.emplace_back(static_cast<Int>(r), Int(hist[r]));
    if (rep.n_lines > 0) rep.mean = rat_make(rep.total, rep.n_lines);
    return rep;
}

Rat st_bound(Int n, Int r) {
    if (n < 1) throw validation_error("point count must be >= 1");
    if (r < 1) throw validation_error("richness threshold must be >= 1");
    Rat cubic = rat_make(checked_mul(n, n), checked_mul(r, checked_mul(r, r)));
    return rat_add(cubic, rat_make(n, r));
}

SharpnessReport sharpness_report(const GridParams& params, const LineSet& lines) {
    if (lines.line_count == 0) throw validation_error("line set is empty");
    RichnessReport rich = richness_core(params, lines, false);
    if (rich.r_min < 1)
        throw validation_error("minimum richness is zero; no rich-line threshold exists");
    Int card_a = checked_mul(4, checked_mul(params.side, params.side));
    SharpnessReport rep;
    rep.n_points = checked_mul(card_a, card_a);
    rep.r = rich.r_min;
    rep.n_rich_lines = lines.line_count;
    rep.st_bound_value = st_bound(rep.n_points, rep.r);
    rep.ratio = rat_div(rat_from_int(rep.n_rich_lines), rep.st_bound_value);
    return rep;
}

Int total_incidences(const GridParams& params, const LineSet& lines) {
    return richness_core(params, lines, false).total;
}

Int slope_incidence_square_sum(const GridParams& params, const QkNum& slope) {
    const RingContext ctx = params.ctx;
    const Int s = params.side;
    const Int p = slope.u.a, q = slope.u.b, d = slope.d;
    const Int kq = checked_mul(ctx.k, q);
    const Int card_a = checked_mul(4, checked_mul(s, s));
    Int n_keys;
    if (!mul_fits(card_a, card_a, &n_keys) || n_keys > kPairKeyCap)
        throw validation_error("pair scan |A|^2 exceeds the internal key cap; reduce the side");

    std::vector<std::pair<Int, Int>> keys;
    keys.reserve(static_cast<size_t>(n_keys));
    for (Int b1 = -s; b1 < s; ++b1)
        for (Int b2 = -s; b2 < s; ++b2) {
            Int ub = checked_add(checked_mul(p, b1), checked_mul(kq, b2));
            Int vb = checked_add(checked_mul(q, b1), checked_mul(p, b2));
            for (Int a1 = -s; a1 < s; ++a1)
                for (Int a2 = -s; a2 < s; ++a2)
                    keys.emplace_back(checked_add(checked_mul(d, a1), ub),
                                      checked_add(checked_mul(d, a2), vb));
        }
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

} // namespace stforge
