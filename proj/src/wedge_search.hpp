#pragma once

// Depth-first propagation of angular wedges across a triangulation in the
// developing plane. Coordinates are integers (edge vectors scaled by a
// common denominator); Z is __int128 or BigInt.

#include "flatlab/errors.hpp"
#include "flatlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace flatlab::detail {

inline int nx3(int i) { return i == 2 ? 0 : i + 1; }
inline int pv3(int i) { return i == 0 ? 2 : i - 1; }

inline double zdbl(__int128 v) { return static_cast<double>(v); }
inline double zdbl(const BigInt& v) { return v.get_d(); }

template <class Z>
using IV = Vec2T<Z>;

template <class Z>
Vec2d ivd(const IV<Z>& v) { return {zdbl(v.x), zdbl(v.y)}; }

// Integer edge vectors: edge * scale where scale clears all denominators.
template <class Z>
struct IntegerFrame {
    std::vector<std::array<IV<Z>, 3>> edges;
};

BigInt common_denominator(const Triangulation& t);

template <class Z>
Z to_z(const BigInt& v);

template <>
inline BigInt to_z<BigInt>(const BigInt& v) { return v; }

template <>
inline __int128 to_z<__int128>(const BigInt& v)
{
    // Split into 62-bit chunks to stay inside long range.
    BigInt a = abs(v);
    __int128 r = 0;
    int shift = 0;
    while (a != 0) {
        BigInt low = a & BigInt((1L << 62) - 1);
        r |= static_cast<__int128>(low.get_si()) << shift;
        a >>= 62;
        shift += 62;
    }
    return v < 0 ? -r : r;
}

inline BigInt from_z(const BigInt& v) { return v; }
inline BigInt from_z(__int128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<unsigned long>(u >> 64);
    BigInt lo = static_cast<unsigned long>(u & ~0UL);
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt(-r) : r;
}

template <class Z>
IntegerFrame<Z> integer_frame(const Triangulation& t, const BigInt& den)
{
    IntegerFrame<Z> f;
    f.edges.resize(t.num_triangles());
    for (int k = 0; k < t.num_triangles(); ++k)
        for (int i = 0; i < 3; ++i) {
            const Vec2& e = t.edge(k, i);
            Rational x = e.x * den, y = e.y * den;
            f.edges[k][i] = {to_z<Z>(x.get_num()), to_z<Z>(y.get_num())};
        }
    return f;
}

// Portion of segment a->b (b ccw of a as seen from the origin) inside the
// open wedge (d1, d2), widened slightly so that pruning stays conservative.
inline void clip_segment(const Vec2d& a, const Vec2d& b, const Vec2d& d1, const Vec2d& d2,
                         Vec2d& p, Vec2d& q)
{
    Vec2d ab = b - a;
    double s1 = 0, s2 = 1;
    double den1 = cross(d1, ab);
    if (std::abs(den1) > 1e-300) s1 = -cross(d1, a) / den1;
    double den2 = cross(d2, ab);
    if (std::abs(den2) > 1e-300) s2 = -cross(d2, a) / den2;
    if (!(s1 >= 0)) s1 = 0;
    if (!(s2 <= 1)) s2 = 1;
    s1 = std::max(0.0, s1 - 1e-9);
    s2 = std::min(1.0, s2 + 1e-9);
    if (s1 > s2) { s1 = 0; s2 = 1; }
    p = a + ab * s1;
    q = a + ab * s2;
}

inline double segment_dist_sq(const Vec2d& p, const Vec2d& q)
{
    Vec2d d = q - p;
    double dd = dot(d, d);
    double s = dd > 0 ? -dot(p, d) / dd : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    Vec2d c = p + d * s;
    return dot(c, c);
}

template <class Z>
struct Wedge {
    Corner corner;
    IV<Z> d1, d2;
    bool include_d1 = false;
};

template <class Z>
class WedgeSearch {
public:
    WedgeSearch(const Triangulation& t, const IntegerFrame<Z>& f) : t_(t), f_(f) {}

    // visit(W, end_corner) is called for every vertex seen strictly inside a
    // wedge (and for the first edge when include_d1 matches it); keep(a, b,
    // d1, d2) decides whether to cross the edge a->b.
    template <class Visit, class Keep>
    void run(const Wedge<Z>& w, Visit&& visit, Keep&& keep, long& budget) const
    {
        const int t0 = w.corner.tri, i0 = w.corner.idx;
        const IV<Z>& B = f_.edges[t0][i0];
        IV<Z> C = -f_.edges[t0][pv3(i0)];
        if (w.include_d1 && cross(w.d1, B) == 0 && dot(w.d1, B) > 0) visit(B, Corner{t0, nx3(i0)});
        stack_.clear();
        push(t0, nx3(i0), B, C, w.d1, w.d2, keep);
        while (!stack_.empty()) {
            if (--budget < 0) throw Error(ErrorCode::BudgetExceeded, "geodesic-count", "wedge search budget exhausted");
            Item it = std::move(stack_.back());
            stack_.pop_back();
            const int t = it.tri, j = it.side;
            IV<Z> W = it.a + f_.edges[t][nx3(j)];
            Z c1 = cross(it.d1, W);
            Z c2 = cross(W, it.d2);
            if (c1 > 0 && c2 > 0) {
                visit(W, Corner{t, pv3(j)});
                push(t, nx3(j), it.a, W, it.d1, W, keep);
                push(t, pv3(j), W, it.b, W, it.d2, keep);
            } else if (c1 <= 0) {
                push(t, pv3(j), W, it.b, it.d1, it.d2, keep);
            } else {
                push(t, nx3(j), it.a, W, it.d1, it.d2, keep);
            }
        }
    }

private:
    struct Item {
        int tri, side;
        IV<Z> a, b, d1, d2;
    };

    template <class Keep>
    void push(int t, int s, const IV<Z>& a, const IV<Z>& b, const IV<Z>& d1, const IV<Z>& d2, Keep& keep) const
    {
        if (!keep(a, b, d1, d2)) return;
        HalfEdge o = t_.opposite(t, s);
        stack_.push_back(Item{o.tri, o.side, a, b, d1, d2});
    }

    const Triangulation& t_;
    const IntegerFrame<Z>& f_;
    mutable std::vector<Item> stack_;
};

}  // namespace flatlab::detail
