#include "flatlab/zippered.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace flatlab {

Rational ZipperedRectangles::base() const
{
    Rational s = 0;
    for (const auto& l : lambda) s += l;
    return s;
}

Rational ZipperedRectangles::tau_sum() const
{
    Rational s = 0;
    for (const auto& t : tau) s += t;
    return s;
}

std::vector<Rational> ZipperedRectangles::heights() const
{
    const int n = size();
    std::vector<Rational> h(n);
    for (int a = 0; a < n; ++a) {
        Rational v = 0;
        for (int k = 0; k < perm.top_pos(a); ++k) v += tau[perm.top[k]];
        for (int k = 0; k < perm.bottom_pos(a); ++k) v -= tau[perm.bottom[k]];
        h[a] = v;
    }
    return h;
}

std::vector<Rational> ZipperedRectangles::zippers() const
{
    std::vector<Rational> a(size());
    Rational s = 0;
    for (int k = 0; k < size(); ++k) {
        a[k] = s;
        s += tau[perm.top[k]];
    }
    return a;
}

Rational ZipperedRectangles::area() const
{
    auto h = heights();
    Rational s = 0;
    for (int a = 0; a < size(); ++a) s += lambda[a] * h[a];
    return s;
}

ZipperedRectangles to_zippered_rectangles(const TranslationSurface& s, const Transversal& X)
{
    FirstReturn fr = first_return(s, X);
    if (!fr.canonical)
        throw Error(ErrorCode::NonGenericSurface, "iet", "transversal does not give a minimal interval exchange");
    const int n = fr.iet.size();
    ZipperedRectangles z;
    z.perm = fr.iet.perm();
    z.lambda = fr.iet.lengths();
    z.length_scale_sq = s.length_scale_sq();
    std::vector<Rational> a(n + 1);
    a[0] = 0;
    for (int k = 1; k < n; ++k) a[k] = fr.zipper_heights[k - 1];
    a[n] = fr.right_end_height;
    z.tau.assign(n, 0);
    for (int k = 0; k < n; ++k) z.tau[z.perm.top[k]] = a[k + 1] - a[k];
    if (z.heights() != fr.heights)
        throw Error(ErrorCode::InvalidSurface, "iet", "zipper data disagrees with return times");
    return z;
}

ZipperedRectangles to_zippered_rectangles(const TranslationSurface& s)
{
    return to_zippered_rectangles(s, canonical_transversal(s));
}

namespace {

struct Glue {
    int right_rect;
    Rational y0, y1;
    int left_rect;
    Rational z0;
};

struct SidePiece {
    Rational lo, hi;
    int glue;
};

void check_cover(std::vector<SidePiece>& pieces, const Rational& h)
{
    std::sort(pieces.begin(), pieces.end(), [](const SidePiece& a, const SidePiece& b) { return a.lo < b.lo; });
    Rational at = 0;
    for (const auto& p : pieces) {
        if (p.lo != at) throw Error(ErrorCode::InvalidSurface, "iet", "zippered sides do not match");
        at = p.hi;
    }
    if (at != h) throw Error(ErrorCode::InvalidSurface, "iet", "zippered sides do not match");
}

}  // namespace

TranslationSurface from_zippered_rectangles(const ZipperedRectangles& z)
{
    const int n = z.size();
    const Permutation& p = z.perm;
    if (!p.irreducible()) throw Error(ErrorCode::NonIrreducible, "iet", "permutation is reducible");
    for (const auto& l : z.lambda)
        if (l <= 0) throw Error(ErrorCode::InvalidSurface, "iet", "rectangle widths must be positive");
    if (!valid_suspension(p, z.tau))
        throw Error(ErrorCode::InvalidSurface, "iet", "suspension data violates prefix conditions");
    const auto h = z.heights();
    const auto a = z.zippers();
    const Rational sigma = z.tau_sum();
    const int tl = p.top.back(), bl = p.bottom.back();
    IetQ T(p, z.lambda);

    std::vector<Rational> sR(n), sL(n);
    for (int k = 0; k < n; ++k) {
        int al = p.top[k];
        sL[al] = a[k];
        sR[al] = (k + 1 < n) ? a[k + 1] : std::max(sigma, Rational(0));
    }
    if (sigma > 0) sR[bl] = h[bl];

    std::vector<Glue> glues;
    auto add = [&](int r, Rational y0, Rational y1, int l, Rational z0) {
        if (y1 > y0) glues.push_back({r, std::move(y0), std::move(y1), l, std::move(z0)});
    };
    for (int k = 1; k < n; ++k) {
        int A = p.top[k - 1], B = p.top[k];
        if (sigma > 0 && A == bl) {
            if (a[k] != h[A] + sigma) throw Error(ErrorCode::InvalidSurface, "iet", "inconsistent zipper at right end");
            add(A, 0, h[A], B, 0);
            add(tl, 0, sigma, B, h[A]);
        } else {
            add(A, 0, a[k], B, 0);
        }
    }
    for (int m = 1; m < n; ++m) {
        int A = p.bottom[m - 1], B = p.bottom[m];
        if (sigma < 0 && A == tl) {
            if (h[B] - sL[B] != h[tl] - sigma || h[bl] - sR[bl] != -sigma)
                throw Error(ErrorCode::InvalidSurface, "iet", "inconsistent zipper at right end");
            add(tl, 0, h[tl], B, h[B] - h[tl]);
            add(bl, h[bl] + sigma, h[bl], B, sL[B]);
        } else {
            if (h[A] - sR[A] != h[B] - sL[B])
                throw Error(ErrorCode::InvalidSurface, "iet", "inconsistent zipper heights");
            add(A, sR[A], h[A], B, sL[B]);
        }
    }

    std::vector<std::vector<SidePiece>> right(n), left(n);
    for (int g = 0; g < static_cast<int>(glues.size()); ++g) {
        const Glue& gl = glues[g];
        right[gl.right_rect].push_back({gl.y0, gl.y1, g});
        left[gl.left_rect].push_back({gl.z0, gl.z0 + (gl.y1 - gl.y0), g});
    }
    for (int al = 0; al < n; ++al) {
        check_cover(right[al], h[al]);
        check_cover(left[al], h[al]);
    }

    std::vector<Rational> domain_cuts, image_cuts;
    for (int al = 0; al < n; ++al) {
        domain_cuts.push_back(T.domain_start(al));
        image_cuts.push_back(T.image_start(al));
    }

    std::vector<std::vector<Vec2>> polys(n);
    std::map<Rational, EdgeRef> bottom_ref, top_ref;
    std::vector<EdgeRef> right_ref(glues.size()), left_ref(glues.size());
    std::vector<std::map<Rational, int>> left_corner(n);
    std::vector<int> bottom_right_corner(n);
    for (int al = 0; al < n; ++al) {
        auto& poly = polys[al];
        const Rational d0 = T.domain_start(al), d1 = d0 + z.lambda[al];
        const Rational i0 = T.image_start(al), i1 = i0 + z.lambda[al];
        std::vector<Rational> cuts{d0};
        for (const auto& c : image_cuts)
            if (c > d0 && c < d1) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(d1);
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            bottom_ref[cuts[k]] = {al, static_cast<int>(poly.size())};
            poly.emplace_back(cuts[k + 1] - cuts[k], 0);
        }
        bottom_right_corner[al] = static_cast<int>(poly.size());
        for (const auto& sp : right[al]) {
            right_ref[sp.glue] = {al, static_cast<int>(poly.size())};
            poly.emplace_back(0, sp.hi - sp.lo);
        }
        std::vector<Rational> tcuts{i1};
        for (const auto& c : domain_cuts)
            if (c > i0 && c < i1) tcuts.push_back(c);
        std::sort(tcuts.rbegin(), tcuts.rend());
        tcuts.push_back(i0);
        for (size_t k = 0; k + 1 < tcuts.size(); ++k) {
            top_ref[tcuts[k + 1]] = {al, static_cast<int>(poly.size())};
            poly.emplace_back(tcuts[k + 1] - tcuts[k], 0);
        }
        for (auto it = left[al].rbegin(); it != left[al].rend(); ++it) {
            left_corner[al][it->hi] = static_cast<int>(poly.size());
            left_ref[it->glue] = {al, static_cast<int>(poly.size())};
            poly.emplace_back(0, it->lo - it->hi);
        }
        left_corner[al][Rational(0)] = 0;
    }

    std::vector<std::vector<EdgeRef>> pairing(n);
    for (int al = 0; al < n; ++al) pairing[al].assign(polys[al].size(), EdgeRef{});
    for (const auto& [u, b] : bottom_ref) {
        auto it = top_ref.find(u);
        if (it == top_ref.end()) throw Error(ErrorCode::InvalidSurface, "iet", "unmatched horizontal side");
        pairing[b.poly][b.edge] = it->second;
        pairing[it->second.poly][it->second.edge] = b;
    }
    for (size_t g = 0; g < glues.size(); ++g) {
        pairing[right_ref[g].poly][right_ref[g].edge] = left_ref[g];
        pairing[left_ref[g].poly][left_ref[g].edge] = right_ref[g];
    }

    TranslationSurface raw(polys, pairing, Backend::Exact, z.length_scale_sq);
    Triangulation tri = raw.triangulation();
    std::vector<bool> keep(tri.num_vertices(), false);
    keep[raw.vertex_of_polygon_corner(p.top[0], 0)] = true;
    for (int k = 1; k < n; ++k) {
        auto it = left_corner[p.top[k]].find(a[k]);
        if (it == left_corner[p.top[k]].end())
            throw Error(ErrorCode::InvalidSurface, "iet", "zipper point is not a corner");
        keep[raw.vertex_of_polygon_corner(p.top[k], it->second)] = true;
    }
    if (sigma == 0) keep[raw.vertex_of_polygon_corner(tl, bottom_right_corner[tl])] = true;
    tri.remove_regular_vertices(keep);
    return surface_from_triangulation(tri, Backend::Exact, z.length_scale_sq);
}

ZipperedStep zippered_rauzy_step(const ZipperedRectangles& z)
{
    auto r = rauzy_step(z.iet());
    ZipperedStep out{z, r.A, r.type};
    out.next.perm = r.next.perm();
    out.next.lambda = r.next.lengths();
    out.next.tau[r.winner] -= z.tau[r.loser];
    return out;
}

ReturnTime teich_return_time(const ZipperedRectangles& z)
{
    if (z.size() < 2 || z.base() != 1)
        throw Error(ErrorCode::DegenerateBase, "iet", "return time needs base length 1 and at least two rectangles");
    const Rational& xn = z.lambda[z.perm.top.back()];
    const Rational& xk = z.lambda[z.perm.bottom.back()];
    if (xn == xk) throw Error(ErrorCode::TieBreak, "iet", "competing rectangles have equal width");
    ReturnTime t;
    t.shrink = std::min(xn, xk);
    if (t.shrink >= 1) throw Error(ErrorCode::DegenerateBase, "iet", "degenerate base");
    t.exp_t0 = 1 / (1 - t.shrink);
    t.t0 = -std::log1p(-to_double(t.shrink));
    return t;
}

ZipperedRectangles renormalize(const ZipperedRectangles& z, const ReturnTime& t)
{
    ZipperedRectangles out = zippered_rauzy_step(z).next;
    for (auto& l : out.lambda) l *= t.exp_t0;
    for (auto& v : out.tau) v /= t.exp_t0;
    return out;
}

}  // namespace flatlab
