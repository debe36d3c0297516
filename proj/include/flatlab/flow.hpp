#pragma once

#include "flatlab/triangulation.hpp"

namespace flatlab {

// Point in the local frame of a triangle (corner 0 at the origin).
struct Location {
    int tri = -1;
    Vec2 p;
};

struct Exit {
    int side = -1;
    Rational s;      // ray parameter at the exit point
    Vec2 q;          // exit point, local frame
    int corner = -1; // corner index when q is a vertex of the triangle
};

// Exact straight-line motion through a triangulation.
class RayTracer {
public:
    explicit RayTracer(const Triangulation& t) : tri_(&t) {}

    const Triangulation& triangulation() const { return *tri_; }

    Exit exit(int t, const Vec2& p, const Vec2& d) const;
    // Same point expressed in the triangle across side `side`.
    Location cross(int t, int side, const Vec2& q) const;
    // Moves a point lying on a side into the neighbour when d points outward.
    Location settle(Location loc, const Vec2& d) const;
    // Side of t containing p (p not a vertex), or -1 when p is interior.
    int side_containing(int t, const Vec2& p) const;
    // Corner of t located at p, or -1.
    int corner_at(int t, const Vec2& p) const;

private:
    const Triangulation* tri_;
};

}  // namespace flatlab
