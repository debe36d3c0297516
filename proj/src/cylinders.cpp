#include "flatlab/cylinders.hpp"

#include "wedge_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace flatlab {

using detail::IV;
using detail::pv3;

bool bounds_cylinder_on_left(const Triangulation& t, const SaddleConnection& sc)
{
    if (!sc.closed()) return false;
    return same_angle(sc.incoming(), rotate_half_turn(t, sc.outgoing(), 1));
}

namespace {

bool canonical_side(const Vec2& v) { return v.y > 0 || (v.y == 0 && v.x > 0); }

template <class Z>
IV<Z> scaled(const Vec2& v, const BigInt& den)
{
    Rational x = v.x * den, y = v.y * den;
    return {detail::to_z<Z>(x.get_num()), detail::to_z<Z>(y.get_num())};
}

struct Lowest {
    bool found = false;
    Corner end;
    Vec2 w;
    Rational cross_raw;
};

// Vertex seen from the start of the bottom boundary, inside the half turn on
// its left, with the least transversal offset cross(v, w). That vertex lies on
// the opposite boundary, so the offset is the cylinder area.
template <class Z>
Lowest lowest_vertex(const TranslationSurface& s, const detail::IntegerFrame<Z>& frame, const BigInt& den,
                     const SaddleConnection& bottom, long& budget)
{
    const Triangulation& t = s.triangulation();
    detail::WedgeSearch<Z> search(t, frame);
    const IV<Z> v = scaled<Z>(bottom.holonomy, den);
    const IV<Z> back = -v;
    const double vv = detail::zdbl(dot(v, v));
    const Vec2d vd = detail::ivd(v);

    Rational area_bound = s.raw_area() * den * den;
    Z best = detail::to_z<Z>(floor_div(area_bound) + 1);
    Lowest low;
    auto visit = [&](const IV<Z>& W, Corner end) {
        Z c = cross(v, W);
        if (c > 0 && c < best) {
            best = c;
            low.found = true;
            low.end = end;
            low.w = Vec2(Rational(detail::from_z(W.x), den), Rational(detail::from_z(W.y), den));
            low.w.x.canonicalize();
            low.w.y.canonicalize();
        }
    };
    auto keep = [&](const IV<Z>& a, const IV<Z>& b, const IV<Z>& d1, const IV<Z>& d2) {
        Vec2d p, q;
        detail::clip_segment(detail::ivd(a), detail::ivd(b), detail::ivd(d1), detail::ivd(d2), p, q);
        const double bd = detail::zdbl(best) * (1 + 1e-9) + 1;
        if (std::min(cross(vd, p), cross(vd, q)) > bd) return false;
        const double r2 = (vv + bd * bd / vv) * (1 + 1e-9) + 1;
        return detail::segment_dist_sq(p, q) <= r2;
    };

    Corner c = bottom.start_corner;
    // First corner: directions strictly after v.
    search.run(detail::Wedge<Z>{c, v, -frame.edges[c.tri][pv3(c.idx)], false}, visit, keep, budget);
    for (int guard = 0; guard < 100000; ++guard) {
        c = t.next_ccw(c);
        const IV<Z>& u = frame.edges[c.tri][c.idx];
        IV<Z> w = -frame.edges[c.tri][pv3(c.idx)];
        if (cross(u, back) == 0 && dot(u, back) > 0) break;
        if (in_sector(u, w, back)) {
            search.run(detail::Wedge<Z>{c, u, back, true}, visit, keep, budget);
            break;
        }
        search.run(detail::Wedge<Z>{c, u, w, true}, visit, keep, budget);
    }
    if (low.found) low.cross_raw = cross(bottom.holonomy, low.w);
    return low;
}

template <class Z>
std::vector<Cylinder> build(const TranslationSurface& s, const BigInt& den, const std::vector<SaddleConnection>& list,
                            const CountOptions& opt)
{
    const Triangulation& t = s.triangulation();
    const auto frame = detail::integer_frame<Z>(t, den);
    std::map<std::pair<int, std::pair<Rational, Rational>>, std::vector<const SaddleConnection*>> tops;
    std::vector<const SaddleConnection*> bottoms;
    for (const SaddleConnection& sc : list) {
        if (!bounds_cylinder_on_left(t, sc)) continue;
        if (canonical_side(sc.holonomy)) bottoms.push_back(&sc);
        else tops[{sc.start, {sc.holonomy.x, sc.holonomy.y}}].push_back(&sc);
    }
    std::vector<Cylinder> out;
    for (const SaddleConnection* b : bottoms) {
        long budget = opt.budget;
        Lowest low = lowest_vertex<Z>(s, frame, den, *b, budget);
        if (!low.found) throw Error(ErrorCode::InvalidSurface, "geodesic-count", "cylinder has no opposite boundary");
        Cylinder cyl;
        cyl.holonomy = b->holonomy;
        cyl.bottom = *b;
        cyl.circumference = b->length;
        cyl.area = low.cross_raw * s.length_scale_sq();
        cyl.width = to_double(cyl.area) / cyl.circumference;
        // Opposite boundary: closed connection at the far vertex with
        // holonomy -v whose left half turn contains the direction back to P.
        const int q = t.vertex_of(low.end);
        ConeAngle back_to_p{q, cone_sheet(t, low.end, -low.w), -low.w};
        const SaddleConnection* top = nullptr;
        auto it = tops.find({q, {-b->holonomy.x, -b->holonomy.y}});
        if (it != tops.end())
            for (const SaddleConnection* cand : it->second)
                if (within_half_turn(t, cand->outgoing(), back_to_p)) top = cand;
        if (!top) throw Error(ErrorCode::InvalidSurface, "geodesic-count", "opposite cylinder boundary not found");
        cyl.top = *top;
        out.push_back(std::move(cyl));
    }
    return out;
}

}  // namespace

std::vector<Cylinder> cylinders_from(const TranslationSurface& s, const std::vector<SaddleConnection>& list,
                                     const CountOptions& opt)
{
    const Triangulation& t = s.triangulation();
    const BigInt den = detail::common_denominator(t);
    // Search radius bound for the width searches: |v|^2 + (area / |v|)^2.
    Rational area = s.raw_area() * den * den;
    Rational worst = 0;
    for (const SaddleConnection& sc : list) {
        if (!bounds_cylinder_on_left(t, sc)) continue;
        Rational vv = dot(sc.holonomy, sc.holonomy) * den * den;
        worst = std::max(worst, Rational(vv + area * area / vv));
    }
    BigInt max_edge = 0;
    for (int k = 0; k < t.num_triangles(); ++k)
        for (int i = 0; i < 3; ++i) {
            Rational x = abs(t.edge(k, i).x) * den, y = abs(t.edge(k, i).y) * den;
            max_edge = std::max(max_edge, BigInt(x.get_num() + y.get_num()));
        }
    BigInt reach = sqrt(floor_div(worst)) + 1 + 4 * max_edge;
    if (reach < (BigInt(1) << 60)) return build<__int128>(s, den, list, opt);
    return build<BigInt>(s, den, list, opt);
}

std::vector<Cylinder> cylinders(const TranslationSurface& s, const Rational& length_sq, const CountOptions& opt)
{
    return cylinders_from(s, saddle_connections(s, length_sq, opt), opt);
}

std::vector<Cylinder> cylinders(const TranslationSurface& s, double length, const CountOptions& opt)
{
    return cylinders_from(s, saddle_connections(s, length, opt), opt);
}

std::vector<std::vector<Cylinder>> cylinder_families(const std::vector<Cylinder>& cyl)
{
    std::map<std::pair<Rational, Rational>, size_t> index;
    std::vector<std::vector<Cylinder>> fam;
    for (const Cylinder& c : cyl) {
        auto key = std::make_pair(c.holonomy.x, c.holonomy.y);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, fam.size());
            fam.push_back({c});
        } else {
            fam[it->second].push_back(c);
        }
    }
    return fam;
}

}  // namespace flatlab
