#include "flatlab/saddle.hpp"

#include "wedge_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace flatlab {

namespace detail {

BigInt common_denominator(const Triangulation& t)
{
    BigInt den = 1;
    for (int k = 0; k < t.num_triangles(); ++k)
        for (int i = 0; i < 3; ++i) {
            den = lcm(den, t.edge(k, i).x.get_den());
            den = lcm(den, t.edge(k, i).y.get_den());
        }
    return den;
}

}  // namespace detail

using detail::IV;
using detail::nx3;
using detail::pv3;

namespace {

// Per-corner sheet offsets: base[t][i] counts east crossings before the
// corner along the ccw ring of its vertex.
struct SheetTable {
    std::vector<std::array<int, 3>> base;
    std::vector<std::array<bool, 3>> has_east;

    explicit SheetTable(const Triangulation& t)
    {
        base.assign(t.num_triangles(), {0, 0, 0});
        has_east.assign(t.num_triangles(), {false, false, false});
        const Vec2 east(1, 0);
        for (int v = 0; v < t.num_vertices(); ++v) {
            int count = 0;
            for (const Corner& c : t.corners_of(v)) {
                base[c.tri][c.idx] = count;
                bool e = t.corner_contains(c, east);
                has_east[c.tri][c.idx] = e;
                if (e) ++count;
            }
        }
    }

    template <class T>
    int sheet(const Triangulation& t, Corner c, const Vec2T<T>& u, const Vec2T<T>& d) const
    {
        int s = base[c.tri][c.idx];
        if (has_east[c.tri][c.idx]) {
            Vec2T<T> east(T(1), T(0));
            if (angle_cmp_from(u, east, d) <= 0) ++s;
        }
        return s % t.angle_multiple(t.vertex_of(c));
    }
};

// Order of directions by angle in [0, 2 pi) measured from east.
int dir_cmp(const Vec2& a, const Vec2& b)
{
    return angle_cmp_from(Vec2(1, 0), a, b);
}

int key_cmp(const ConeAngle& a, const ConeAngle& b)
{
    if (a.sheet != b.sheet) return a.sheet < b.sheet ? -1 : 1;
    return dir_cmp(a.dir, b.dir);
}

template <class Z>
std::vector<SaddleConnection> enumerate(const TranslationSurface& s, const BigInt& den,
                                        const BigInt& r2, const CountOptions& opt)
{
    const Triangulation& t = s.triangulation();
    const auto frame = detail::integer_frame<Z>(t, den);
    const SheetTable sheets(t);
    const Z R2 = detail::to_z<Z>(r2);
    const double r2d = r2.get_d() * (1 + 1e-9) + 1;
    detail::WedgeSearch<Z> search(t, frame);

    struct Raw {
        int start_tri, start_idx;
        Corner end;
        IV<Z> w;
    };
    std::vector<Raw> found;
    long budget = opt.budget;
    auto keep = [&](const IV<Z>& a, const IV<Z>& b, const IV<Z>& d1, const IV<Z>& d2) {
        Vec2d p, q;
        detail::clip_segment(detail::ivd(a), detail::ivd(b), detail::ivd(d1), detail::ivd(d2), p, q);
        return detail::segment_dist_sq(p, q) <= r2d;
    };
    for (int tri = 0; tri < t.num_triangles(); ++tri)
        for (int i = 0; i < 3; ++i) {
            detail::Wedge<Z> w{Corner{tri, i}, frame.edges[tri][i], -frame.edges[tri][pv3(i)], true};
            auto visit = [&](const IV<Z>& W, Corner end) {
                if (dot(W, W) <= R2) found.push_back(Raw{tri, i, end, W});
            };
            search.run(w, visit, keep, budget);
        }

    const double scale = to_double(s.length_scale_sq());
    const double dd = den.get_d();
    std::vector<SaddleConnection> out;
    out.reserve(found.size());
    for (const Raw& r : found) {
        SaddleConnection sc;
        sc.start_corner = {r.start_tri, r.start_idx};
        sc.end_corner = r.end;
        sc.start = t.vertex_of(sc.start_corner);
        sc.end = t.vertex_of(sc.end_corner);
        sc.holonomy = Vec2(Rational(detail::from_z(r.w.x), den), Rational(detail::from_z(r.w.y), den));
        sc.holonomy.x.canonicalize();
        sc.holonomy.y.canonicalize();
        Vec2d wd = detail::ivd(r.w);
        sc.length = std::sqrt(dot(wd, wd) * scale) / dd;
        sc.start_sheet = sheets.sheet(t, sc.start_corner, frame.edges[r.start_tri][r.start_idx], r.w);
        IV<Z> back = -r.w;
        sc.end_sheet = sheets.sheet(t, sc.end_corner, frame.edges[r.end.tri][r.end.idx], back);
        out.push_back(std::move(sc));
    }
    std::stable_sort(out.begin(), out.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
        return a.length < b.length;
    });
    return out;
}

}  // namespace

int cone_sheet(const Triangulation& t, Corner c, const Vec2& d)
{
    SheetTable table(t);
    return table.sheet(t, c, t.edge(c.tri, c.idx), d);
}

ConeAngle rotate_half_turn(const Triangulation& t, const ConeAngle& a, int sign)
{
    const int m = t.angle_multiple(a.vertex);
    ConeAngle r{a.vertex, a.sheet, -a.dir};
    const bool upper = half_from(Vec2(1, 0), a.dir) == 0;
    if (sign > 0) {
        if (!upper) r.sheet = (a.sheet + 1) % m;
    } else {
        if (upper) r.sheet = (a.sheet + m - 1) % m;
    }
    return r;
}

bool same_angle(const ConeAngle& a, const ConeAngle& b)
{
    return a.vertex == b.vertex && a.sheet == b.sheet && same_direction(a.dir, b.dir);
}

bool within_half_turn(const Triangulation& t, const ConeAngle& a, const ConeAngle& b)
{
    if (a.vertex != b.vertex) return false;
    ConeAngle h = rotate_half_turn(t, a, 1);
    if (key_cmp(a, h) < 0) return key_cmp(a, b) < 0 && key_cmp(b, h) < 0;
    return key_cmp(a, b) < 0 || key_cmp(b, h) < 0;
}

std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, const Rational& length_sq,
                                                 const CountOptions& opt)
{
    if (s.backend() != Backend::Exact)
        throw Error(ErrorCode::BackendMismatch, "geodesic-count", "saddle connection enumeration needs the exact backend");
    if (length_sq <= 0) throw Error(ErrorCode::BudgetExceeded, "geodesic-count", "length bound must be positive");
    const Triangulation& t = s.triangulation();
    const BigInt den = detail::common_denominator(t);
    Rational r2q = length_sq / s.length_scale_sq() * den * den;
    BigInt r2 = floor_div(r2q);

    BigInt max_edge = 0;
    for (int k = 0; k < t.num_triangles(); ++k)
        for (int i = 0; i < 3; ++i) {
            Rational x = abs(t.edge(k, i).x) * den, y = abs(t.edge(k, i).y) * den;
            max_edge = std::max(max_edge, BigInt(x.get_num() + y.get_num()));
        }
    BigInt reach = sqrt(r2) + 1 + 4 * max_edge;
    if (reach < (BigInt(1) << 60)) return enumerate<__int128>(s, den, r2, opt);
    return enumerate<BigInt>(s, den, r2, opt);
}

std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, double length,
                                                 const CountOptions& opt)
{
    if (!(length > 0)) throw Error(ErrorCode::BudgetExceeded, "geodesic-count", "length bound must be positive");
    Rational l = exact_rational(length);
    return saddle_connections(s, Rational(l * l), opt);
}

namespace {

void add_edge(const Triangulation& t, IntVec& chain, int tri, int side, int sign)
{
    chain[t.edge_id(tri, side)] += sign * t.edge_sign(tri, side);
}

}  // namespace

IntVec saddle_chain(const TranslationSurface& s, const SaddleConnection& sc)
{
    const Triangulation& t = s.triangulation();
    IntVec chain(t.num_edges(), 0);
    const Vec2& h = sc.holonomy;
    const int t0 = sc.start_corner.tri, i0 = sc.start_corner.idx;
    Vec2 a = t.edge(t0, i0);
    Vec2 b = -t.edge(t0, pv3(i0));
    add_edge(t, chain, t0, i0, 1);
    if (same_direction(h, a)) {
        if (a != h) throw Error(ErrorCode::InvalidSurface, "geodesic-count", "retrace does not match the holonomy");
        return chain;
    }
    HalfEdge in = t.opposite(t0, nx3(i0));
    for (int guard = 0; guard < 100000000; ++guard) {
        const int tri = in.tri, j = in.side;
        Vec2 W = a + t.edge(tri, nx3(j));
        const int from = nx3(j);
        Rational c = cross(h, W);
        if (c == 0 && dot(h, W) > 0) {
            if (W != h) throw Error(ErrorCode::InvalidSurface, "geodesic-count", "retrace does not match the holonomy");
            add_edge(t, chain, tri, from, 1);
            return chain;
        }
        if (c > 0) {
            b = W;
            in = t.opposite(tri, nx3(j));
        } else {
            add_edge(t, chain, tri, from, 1);
            a = W;
            in = t.opposite(tri, pv3(j));
        }
        if (dot(a, a) > dot(h, h) * 4 + 4 && dot(b, b) > dot(h, h) * 4 + 4)
            throw Error(ErrorCode::InvalidSurface, "geodesic-count", "retrace overshoots the holonomy");
    }
    throw Error(ErrorCode::BudgetExceeded, "geodesic-count", "retrace budget exhausted");
}

RelativeHomology::RelativeHomology(const Triangulation& t)
{
    std::vector<IntVec> bnd;
    for (int k = 0; k < t.num_triangles(); ++k) {
        IntVec r(t.num_edges(), 0);
        for (int i = 0; i < 3; ++i) r[t.edge_id(k, i)] += t.edge_sign(k, i);
        bnd.push_back(std::move(r));
    }
    rows_ = lattice_basis(bnd);
    for (const IntVec& r : rows_) {
        int p = 0;
        while (r[p] == 0) ++p;
        if (abs(r[p]) != 1) throw Error(ErrorCode::BasisConstructionFailed, "geodesic-count", "boundary lattice is not saturated");
        pivots_.push_back(p);
    }
    rank_ = t.num_edges() - static_cast<int>(rows_.size());
}

IntVec RelativeHomology::reduce(IntVec chain) const
{
    for (size_t k = 0; k < rows_.size(); ++k) {
        const int p = pivots_[k];
        if (chain[p] == 0) continue;
        BigInt f = chain[p] * rows_[k][p];
        for (size_t e = 0; e < chain.size(); ++e) chain[e] -= f * rows_[k][e];
    }
    return chain;
}

std::vector<std::vector<SaddleConnection>> homologous_groups(const TranslationSurface& s,
                                                             const std::vector<SaddleConnection>& list)
{
    RelativeHomology rel(s.triangulation());
    std::map<std::tuple<Rational, Rational, IntVec>, size_t> index;
    std::vector<std::vector<SaddleConnection>> groups;
    for (const SaddleConnection& sc : list) {
        auto key = std::make_tuple(sc.holonomy.x, sc.holonomy.y, rel.reduce(saddle_chain(s, sc)));
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), groups.size());
            groups.push_back({sc});
        } else {
            groups[it->second].push_back(sc);
        }
    }
    return groups;
}

std::vector<std::vector<SaddleConnection>> homologous_groups(const TranslationSurface& s, double length,
                                                             const CountOptions& opt)
{
    return homologous_groups(s, saddle_connections(s, length, opt));
}

}  // namespace flatlab
