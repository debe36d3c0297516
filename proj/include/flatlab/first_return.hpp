#pragma once

#include "flatlab/flow.hpp"
#include "flatlab/iet.hpp"
#include "flatlab/surface.hpp"

#include <functional>
#include <vector>

namespace flatlab {

// Horizontal segment starting at a cone point and running east.
// start: corner whose sector contains the east direction. length: raw units.
struct Transversal {
    Corner start;
    Rational length;
};

struct XPiece {
    int tri = -1;
    Vec2 a, b;          // local endpoints, a west of b
    Rational s0, s1;    // positions along the segment
    bool on_edge = false;
};

struct XEvent {
    Rational s;         // position where the eastward segment leaves a triangle
    HalfEdge exit;
};

class HorizontalRay {
public:
    // Traces east from the corner up to max_len or until a cone point is hit.
    static HorizontalRay trace(const Triangulation& t, Corner start, const Rational& max_len, long& budget);

    const std::vector<XPiece>& pieces() const { return pieces_; }
    const std::vector<XEvent>& events() const { return events_; }
    const std::vector<int>& pieces_in(int tri) const { return by_tri_[tri]; }
    const Rational& length() const { return length_; }
    bool ends_at_vertex() const { return ends_at_vertex_; }
    bool on_edge() const { return !pieces_.empty() && pieces_[0].on_edge; }
    HalfEdge edge() const { return edge_; }
    int start_vertex() const { return start_vertex_; }
    int end_vertex() const { return end_vertex_; }
    Location locate(const Rational& s) const;
    bool is_event(const Rational& s) const;

private:
    std::vector<XPiece> pieces_;
    std::vector<XEvent> events_;
    std::vector<std::vector<int>> by_tri_;
    Rational length_;
    bool ends_at_vertex_ = false;
    HalfEdge edge_;
    int start_vertex_ = -1;
    int end_vertex_ = -1;
};

struct VerticalHit {
    bool vertex = false;
    int vertex_id = -1;
    Rational pos;        // position on the segment when !vertex
    Rational height;     // vertical distance travelled
    Location loc;        // where the trace stopped
};

// Vertical trace (dir = +1 up, -1 down). on_hit(pos) is called for every hit
// of the segment at a position in (0, length]; returning true stops the trace.
// A hit at position 0 or a vertex on the way terminates as a vertex hit.
VerticalHit trace_vertical(const RayTracer& rt, const HorizontalRay& ray, Location start, int dir,
                           const std::function<bool(const Rational&)>& on_hit,
                           std::vector<HalfEdge>* crossings, long& budget);

// Closed loop given by the cyclic list of exited half-edges, starting and
// ending in triangle start_tri.
struct CrossingLoop {
    int start_tri = -1;
    std::vector<HalfEdge> crossings;
};

struct FirstReturn {
    Transversal X;
    Triangulation tri;
    IetQ iet;
    std::vector<Rational> heights;           // return time per label
    std::vector<Rational> sample;            // representative point per label
    std::vector<CrossingLoop> loops;         // first-return loop per label
    std::vector<Rational> discontinuities;   // interior, increasing
    std::vector<Rational> zipper_heights;    // cone point height above each discontinuity
    // Signed height of the cone point on the vertical through the right end:
    // positive above, negative below, zero when the right end is a cone point.
    Rational right_end_height;
    bool canonical = false;                  // n = 2g + m - 1
};

Transversal canonical_transversal(const TranslationSurface& s, long budget = 20000000);
FirstReturn first_return(const TranslationSurface& s, const Transversal& X, long budget = 20000000);
IetQ first_return_iet(const TranslationSurface& s, const Transversal& X);

}  // namespace flatlab
