#include "flatlab/flow.hpp"

#include "flatlab/errors.hpp"

namespace flatlab {

Exit RayTracer::exit(int t, const Vec2& p, const Vec2& d) const
{
    const Triangulation& T = *tri_;
    Exit best;
    Vec2 P = Vec2(0, 0);
    for (int i = 0; i < 3; ++i) {
        const Vec2& e = T.edge(t, i);
        Rational c = flatlab::cross(e, d);
        if (c < 0) {
            Rational s = flatlab::cross(e, p - P) / (-c);
            if (best.side < 0 || s < best.s) {
                best.side = i;
                best.s = s;
            }
        }
        P += e;
    }
    if (best.side < 0)
        throw Error(ErrorCode::InvalidSurface, "flow", "ray has no exit");
    best.q = p + d * best.s;
    Vec2 a = T.position(t, best.side);
    Vec2 b = a + T.edge(t, best.side);
    if (best.q == a) best.corner = best.side;
    else if (best.q == b) best.corner = (best.side + 1) % 3;
    return best;
}

Location RayTracer::cross(int t, int side, const Vec2& q) const
{
    const Triangulation& T = *tri_;
    HalfEdge o = T.opposite(t, side);
    Vec2 start = T.position(t, side);
    Vec2 other = T.position(o.tri, (o.side + 1) % 3);
    return {o.tri, other + (q - start)};
}

int RayTracer::side_containing(int t, const Vec2& p) const
{
    const Triangulation& T = *tri_;
    Vec2 P(0, 0);
    for (int i = 0; i < 3; ++i) {
        if (flatlab::cross(T.edge(t, i), p - P) == 0) return i;
        P += T.edge(t, i);
    }
    return -1;
}

int RayTracer::corner_at(int t, const Vec2& p) const
{
    for (int i = 0; i < 3; ++i)
        if (tri_->position(t, i) == p) return i;
    return -1;
}

Location RayTracer::settle(Location loc, const Vec2& d) const
{
    if (corner_at(loc.tri, loc.p) >= 0)
        throw Error(ErrorCode::SeparatrixHit, "flow", "point is a cone point");
    int side = side_containing(loc.tri, loc.p);
    if (side >= 0 && flatlab::cross(tri_->edge(loc.tri, side), d) < 0) return cross(loc.tri, side, loc.p);
    return loc;
}

}  // namespace flatlab
