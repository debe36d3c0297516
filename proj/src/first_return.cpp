#include "flatlab/first_return.hpp"

#include "flatlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

namespace flatlab {

namespace {

void spend(long& budget)
{
    if (--budget < 0)
        throw Error(ErrorCode::FlowBudgetExceeded, "iet", "flow budget exhausted");
}

const Vec2 kEast(1, 0);
const Vec2 kUp(0, 1);
const Vec2 kDown(0, -1);

}  // namespace

HorizontalRay HorizontalRay::trace(const Triangulation& T, Corner start, const Rational& max_len, long& budget)
{
    HorizontalRay ray;
    ray.by_tri_.assign(T.num_triangles(), {});
    RayTracer rt(T);
    const Vec2& e = T.edge(start.tri, start.idx);
    Vec2 origin = T.position(start.tri, start.idx);
    ray.end_vertex_ = T.vertex_of(start);
    ray.start_vertex_ = T.vertex_of(start);
    if (same_direction(e, kEast)) {
        Rational len = std::min(max_len, e.x);
        XPiece piece{start.tri, origin, origin + Vec2(len, 0), 0, len, true};
        ray.pieces_.push_back(piece);
        ray.by_tri_[start.tri].push_back(0);
        ray.length_ = len;
        ray.ends_at_vertex_ = (len == e.x);
        ray.edge_ = {start.tri, start.idx};
        if (ray.ends_at_vertex_) ray.end_vertex_ = T.vertex_of(start.tri, (start.idx + 1) % 3);
        return ray;
    }
    if (!T.corner_contains(start, kEast))
        throw Error(ErrorCode::ConfigError, "iet", "transversal corner does not contain the east direction");
    Location loc{start.tri, origin};
    Rational s = 0;
    for (;;) {
        spend(budget);
        Exit ex = rt.exit(loc.tri, loc.p, kEast);
        Rational next = s + (ex.q.x - loc.p.x);
        int idx = static_cast<int>(ray.pieces_.size());
        if (next > max_len) {
            Vec2 b = loc.p + Vec2(max_len - s, 0);
            ray.pieces_.push_back({loc.tri, loc.p, b, s, max_len, false});
            ray.by_tri_[loc.tri].push_back(idx);
            ray.length_ = max_len;
            return ray;
        }
        ray.pieces_.push_back({loc.tri, loc.p, ex.q, s, next, false});
        ray.by_tri_[loc.tri].push_back(idx);
        if (ex.corner >= 0) {
            ray.length_ = next;
            ray.ends_at_vertex_ = true;
            ray.end_vertex_ = T.vertex_of(loc.tri, ex.corner);
            return ray;
        }
        if (next == max_len) {
            ray.length_ = max_len;
            return ray;
        }
        ray.events_.push_back({next, {loc.tri, ex.side}});
        loc = rt.cross(loc.tri, ex.side, ex.q);
        s = next;
    }
}

Location HorizontalRay::locate(const Rational& s) const
{
    for (const XPiece& p : pieces_)
        if (p.s0 <= s && (s < p.s1 || (s == p.s1 && &p == &pieces_.back())))
            return {p.tri, p.a + Vec2(s - p.s0, 0)};
    throw Error(ErrorCode::ConfigError, "iet", "position outside the transversal");
}

bool HorizontalRay::is_event(const Rational& s) const
{
    auto it = std::lower_bound(events_.begin(), events_.end(), s,
                               [](const XEvent& e, const Rational& v) { return e.s < v; });
    return it != events_.end() && it->s == s;
}

VerticalHit trace_vertical(const RayTracer& rt, const HorizontalRay& ray, Location start, int dir,
                           const std::function<bool(const Rational&)>& on_hit,
                           std::vector<HalfEdge>* crossings, long& budget)
{
    const Triangulation& T = rt.triangulation();
    const Vec2 d(0, dir);
    Location loc = start;
    if (rt.corner_at(loc.tri, loc.p) < 0) loc = rt.settle(loc, d);
    VerticalHit out;
    out.height = 0;
    HalfEdge twin = ray.on_edge() ? T.opposite(ray.edge()) : HalfEdge{};
    auto vertex_result = [&](int vid, Location where) {
        out.vertex = true;
        out.vertex_id = vid;
        out.loc = where;
        return out;
    };
    auto classify_pos = [&](const Rational& pos) -> int {
        if (pos == 0) return ray.start_vertex();
        if (pos == ray.length() && ray.ends_at_vertex()) return ray.end_vertex();
        return -1;
    };
    for (;;) {
        spend(budget);
        Exit ex = rt.exit(loc.tri, loc.p, d);
        Rational span = (ex.q.y - loc.p.y) * dir;
        std::optional<Rational> best_dy;
        int best_piece = -1;
        for (int idx : ray.pieces_in(loc.tri)) {
            const XPiece& pc = ray.pieces()[idx];
            if (pc.on_edge) continue;
            Rational dy = (pc.a.y - loc.p.y) * dir;
            if (dy <= 0 || dy > span) continue;
            if (loc.p.x < pc.a.x || loc.p.x > pc.b.x) continue;
            if (!best_dy || dy < *best_dy) {
                best_dy = dy;
                best_piece = idx;
            }
        }
        if (best_piece >= 0) {
            const XPiece& pc = ray.pieces()[best_piece];
            Rational pos = pc.s0 + (loc.p.x - pc.a.x);
            out.height += *best_dy;
            Location at{loc.tri, Vec2(loc.p.x, pc.a.y)};
            int vid = classify_pos(pos);
            if (vid >= 0) return vertex_result(vid, at);
            if (on_hit(pos)) {
                out.pos = pos;
                out.loc = at;
                return out;
            }
            loc = at;
            continue;
        }
        HalfEdge through{loc.tri, ex.side};
        if (ray.on_edge() && ((dir > 0 && through == twin) || (dir < 0 && through == ray.edge()))) {
            Rational pos;
            if (dir > 0)
                pos = ex.q.x - T.position(loc.tri, (ex.side + 1) % 3).x;
            else
                pos = ex.q.x - T.position(loc.tri, ex.side).x;
            if (pos >= 0 && pos <= ray.length()) {
                out.height += span;
                Location at{loc.tri, ex.q};
                int vid = classify_pos(pos);
                if (vid >= 0) return vertex_result(vid, at);
                if (on_hit(pos)) {
                    out.pos = pos;
                    out.loc = at;
                    return out;
                }
                out.height -= span;
            }
        }
        out.height += span;
        if (ex.corner >= 0) return vertex_result(T.vertex_of(loc.tri, ex.corner), {loc.tri, ex.q});
        if (crossings) crossings->push_back(through);
        loc = rt.cross(loc.tri, ex.side, ex.q);
    }
}

namespace {

Location vertex_start(const Triangulation& T, Corner c, const Vec2& d)
{
    if (same_direction(T.edge(c.tri, c.idx), d))
        throw Error(ErrorCode::NonGenericSurface, "iet", "vertical saddle connection along an edge");
    return {c.tri, T.position(c.tri, c.idx)};
}

}  // namespace

Transversal canonical_transversal(const TranslationSurface& s, long budget)
{
    const Triangulation& T = s.triangulation();
    RayTracer rt(T);
    int v0 = 0;
    for (int v = 0; v < T.num_vertices(); ++v)
        if (T.angle_multiple(v) > 1) {
            v0 = v;
            break;
        }
    auto starts = T.corners_containing(v0, kEast);
    if (starts.empty()) throw Error(ErrorCode::InvalidSurface, "iet", "no east direction at cone point");
    Corner start = starts.front();
    const Rational A = s.raw_area();
    Rational cap = exact_rational(4.0 * std::sqrt(to_double(A)) + 1e-9);
    HorizontalRay ray = HorizontalRay::trace(T, start, cap, budget);

    std::set<Rational> candidates;
    if (ray.ends_at_vertex() && ray.length() * ray.length() >= A) candidates.insert(ray.length());
    for (int v = 0; v < T.num_vertices(); ++v)
        for (const Vec2& d : {kDown, kUp})
            for (const Corner& c : T.corners_containing(v, d)) {
                Location st = vertex_start(T, c, d);
                std::optional<Rational> record;
                auto on_hit = [&](const Rational& pos) {
                    if (pos == ray.length()) return false;
                    if (!record || pos < *record) {
                        record = pos;
                        if (pos * pos >= A) candidates.insert(pos);
                        else return true;
                    }
                    return false;
                };
                VerticalHit h = trace_vertical(rt, ray, st, sgn(d.y), on_hit, nullptr, budget);
                if (h.vertex)
                    throw Error(ErrorCode::NonGenericSurface, "iet", "vertical saddle connection");
            }
    if (candidates.empty())
        throw Error(ErrorCode::NonGenericSurface, "iet", "no admissible transversal length");
    return {start, *candidates.begin()};
}

FirstReturn first_return(const TranslationSurface& s, const Transversal& X, long budget)
{
    if (X.length <= 0)
        throw Error(ErrorCode::TransversalMissesFlow, "iet", "transversal has zero length");
    const Triangulation& T = s.triangulation();
    RayTracer rt(T);
    HorizontalRay ray = HorizontalRay::trace(T, X.start, X.length, budget);
    if (ray.length() < X.length)
        throw Error(ErrorCode::NonGenericSurface, "iet", "transversal runs into a cone point");
    const Rational L = X.length;
    auto inside = [&](const Rational& pos) { return pos < L; };

    std::set<Rational> disc;
    for (int v = 0; v < T.num_vertices(); ++v)
        for (const Corner& c : T.corners_containing(v, kDown)) {
            VerticalHit h = trace_vertical(rt, ray, vertex_start(T, c, kDown), -1, inside, nullptr, budget);
            if (h.vertex) throw Error(ErrorCode::NonGenericSurface, "iet", "vertical saddle connection");
            disc.insert(h.pos);
        }

    FirstReturn fr;
    fr.X = X;
    fr.tri = T;
    bool right_known = false;
    if (ray.ends_at_vertex()) {
        fr.right_end_height = 0;
        right_known = true;
    } else {
        Location e = ray.locate(L);
        VerticalHit h = trace_vertical(rt, ray, e, -1, inside, nullptr, budget);
        if (h.vertex) {
            fr.right_end_height = -h.height;
            right_known = true;
        } else {
            disc.insert(h.pos);
            VerticalHit u = trace_vertical(rt, ray, e, 1, inside, nullptr, budget);
            if (u.vertex) {
                fr.right_end_height = u.height;
                right_known = true;
            }
        }
    }
    disc.erase(Rational(0));
    fr.discontinuities.assign(disc.begin(), disc.end());
    std::vector<Rational> cuts;
    cuts.push_back(0);
    for (const auto& d : fr.discontinuities) cuts.push_back(d);
    cuts.push_back(L);
    const int n = static_cast<int>(cuts.size()) - 1;

    std::vector<Rational> lengths(n), image_start(n);
    fr.heights.resize(n);
    fr.sample.resize(n);
    fr.loops.resize(n);
    static const int fractions[][2] = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 5}, {2, 5},
                                       {3, 5}, {4, 5}, {1, 7}, {3, 7}, {5, 7}, {1, 11}, {7, 11}};
    for (int k = 0; k < n; ++k) {
        const Rational lo = cuts[k], hi = cuts[k + 1];
        lengths[k] = hi - lo;
        bool done = false;
        for (const auto& f : fractions) {
            Rational x = lo + (hi - lo) * frac(f[0], f[1]);
            if (ray.is_event(x)) continue;
            std::vector<HalfEdge> cr;
            Location st = ray.locate(x);
            int start_tri = st.tri;
            if (ray.on_edge()) {
                HalfEdge tw = T.opposite(ray.edge());
                cr.push_back(tw);
                start_tri = tw.tri;
            }
            VerticalHit h = trace_vertical(rt, ray, st, 1, inside, &cr, budget);
            if (h.vertex)
                throw Error(ErrorCode::NonGenericSurface, "iet", "return orbit meets a cone point");
            if (ray.is_event(h.pos)) continue;
            const Rational& y = h.pos;
            if (y > x) {
                for (auto it = ray.events().rbegin(); it != ray.events().rend(); ++it)
                    if (it->s > x && it->s < y) cr.push_back(T.opposite(it->exit));
            } else {
                for (const auto& ev : ray.events())
                    if (ev.s > y && ev.s < x) cr.push_back(ev.exit);
            }
            fr.heights[k] = h.height;
            fr.sample[k] = x;
            fr.loops[k] = {start_tri, std::move(cr)};
            image_start[k] = lo + (y - x);
            done = true;
            break;
        }
        if (!done) throw Error(ErrorCode::NonGenericSurface, "iet", "no generic sample point");
    }
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return image_start[a] < image_start[b]; });
    Rational acc = 0;
    for (int k : order) {
        if (image_start[k] != acc)
            throw Error(ErrorCode::InvalidSurface, "iet", "first-return images do not tile the transversal");
        acc += lengths[k];
    }
    std::vector<int> top(n);
    for (int k = 0; k < n; ++k) top[k] = k;
    fr.iet = IetQ(Permutation(top, order), lengths);

    for (const auto& d : fr.discontinuities) {
        VerticalHit h = trace_vertical(rt, ray, ray.locate(d), 1, inside, nullptr, budget);
        if (!h.vertex) throw Error(ErrorCode::NonGenericSurface, "iet", "discontinuity without cone point");
        fr.zipper_heights.push_back(h.height);
    }
    int expected = 2 * s.genus() + s.num_vertices() - 1;
    fr.canonical = right_known && n == expected;
    return fr;
}

IetQ first_return_iet(const TranslationSurface& s, const Transversal& X)
{
    return first_return(s, X).iet;
}

}  // namespace flatlab
