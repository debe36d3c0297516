#include "flatlab/surface.hpp"

#include "flatlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace flatlab {

std::string_view backend_name(Backend b)
{
    return b == Backend::Exact ? "exact" : "float";
}

Backend parse_backend(std::string_view s)
{
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    throw Error(ErrorCode::ConfigError, "core", "unknown backend '" + std::string(s) + "'");
}

Stratum::Stratum(std::vector<int> d) : degrees(std::move(d))
{
    if (degrees.empty())
        throw Error(ErrorCode::InvalidStratum, "core", "stratum needs at least one point");
    for (int x : degrees)
        if (x < 0) throw Error(ErrorCode::InvalidStratum, "core", "negative degree");
    std::sort(degrees.rbegin(), degrees.rend());
}

int Stratum::genus() const
{
    int sum = std::accumulate(degrees.begin(), degrees.end(), 0);
    if (sum % 2 != 0)
        throw Error(ErrorCode::InvalidStratum, "core", "degree sum " + std::to_string(sum) + " is odd");
    return sum / 2 + 1;
}

int Stratum::num_marked() const
{
    return static_cast<int>(std::count(degrees.begin(), degrees.end(), 0));
}

bool Stratum::all_even() const
{
    return std::all_of(degrees.begin(), degrees.end(), [](int d) { return d % 2 == 0; });
}

Stratum Stratum::without_marked() const
{
    std::vector<int> d;
    for (int x : degrees)
        if (x > 0) d.push_back(x);
    if (d.empty()) d.push_back(0);
    return Stratum(d);
}

std::string Stratum::name() const
{
    std::string s = "H(";
    for (size_t i = 0; i < degrees.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(degrees[i]);
    }
    return s + ")";
}

Stratum Stratum::parse(std::string_view text)
{
    std::string t(text);
    if (t.rfind("H(", 0) == 0 && !t.empty() && t.back() == ')') t = t.substr(2, t.size() - 3);
    std::vector<int> d;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size() && item.find_first_not_of(' ', pos) != std::string::npos)
                throw std::invalid_argument(item);
            d.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "core", "bad stratum '" + std::string(text) + "'");
        }
    }
    return Stratum(d);
}

namespace {

std::vector<Vec2> vertex_positions(const std::vector<Vec2>& edges)
{
    std::vector<Vec2> p;
    Vec2 cur(0, 0);
    for (const auto& e : edges) {
        p.push_back(cur);
        cur += e;
    }
    return p;
}

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p)
{
    return orient(a, b, p) == 0 && dot(p - a, p - b) <= 0;
}

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d)
{
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

Rational signed_area2(const std::vector<Vec2>& edges)
{
    auto p = vertex_positions(edges);
    Rational a = 0;
    for (size_t i = 0; i < p.size(); ++i)
        a += cross(p[i], p[(i + 1) % p.size()]);
    return a;
}

// Ear clipping of a simple ccw polygon; returns vertex index triples.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& pos)
{
    std::vector<int> idx(pos.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<int, 3>> tris;
    while (idx.size() > 3) {
        bool found = false;
        int m = static_cast<int>(idx.size());
        for (int k = 0; k < m && !found; ++k) {
            int a = idx[(k + m - 1) % m], b = idx[k], c = idx[(k + 1) % m];
            if (orient(pos[a], pos[b], pos[c]) <= 0) continue;
            bool blocked = false;
            for (int q : idx) {
                if (q == a || q == b || q == c) continue;
                if (orient(pos[a], pos[b], pos[q]) >= 0 && orient(pos[b], pos[c], pos[q]) >= 0 &&
                    orient(pos[c], pos[a], pos[q]) >= 0) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            tris.push_back({a, b, c});
            idx.erase(idx.begin() + k);
            found = true;
        }
        if (!found)
            throw Error(ErrorCode::SelfIntersectingBoundary, "core", "polygon cannot be triangulated");
    }
    if (orient(pos[idx[0]], pos[idx[1]], pos[idx[2]]) <= 0)
        throw Error(ErrorCode::SelfIntersectingBoundary, "core", "degenerate polygon");
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& edges)
{
    int n = static_cast<int>(edges.size());
    if (n < 3) return false;
    auto p = vertex_positions(edges);
    for (int i = 0; i < n; ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % n];
        // Consecutive edges must not fold back onto each other.
        const Vec2& nxt = edges[(i + 1) % n];
        if (cross(edges[i], nxt) == 0 && dot(edges[i], nxt) < 0) return false;
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_touch(a, b, p[j], p[(j + 1) % n])) return false;
        }
    }
    return true;
}

TranslationSurface::TranslationSurface(std::vector<std::vector<Vec2>> polygons,
                                       std::vector<std::vector<EdgeRef>> pairing,
                                       Backend backend, Rational length_scale_sq)
    : polygons_(std::move(polygons)),
      pairing_(std::move(pairing)),
      backend_(backend),
      scale_sq_(std::move(length_scale_sq))
{
    if (polygons_.empty() || pairing_.size() != polygons_.size())
        throw Error(ErrorCode::InvalidSurface, "core", "polygon and pairing lists disagree");
    if (scale_sq_ <= 0)
        throw Error(ErrorCode::InvalidSurface, "core", "length scale must be positive");
    int np = static_cast<int>(polygons_.size());
    for (int p = 0; p < np; ++p) {
        const auto& poly = polygons_[p];
        if (poly.size() != pairing_[p].size())
            throw Error(ErrorCode::InvalidSurface, "core", "pairing size mismatch");
        Vec2 sum(0, 0);
        for (const auto& e : poly) {
            if (e.is_zero()) throw Error(ErrorCode::ZeroEdge, "core", "zero edge vector");
            sum += e;
        }
        if (!sum.is_zero()) throw Error(ErrorCode::NonClosingPolygon, "core", "polygon does not close");
        if (signed_area2(poly) <= 0)
            throw Error(ErrorCode::SelfIntersectingBoundary, "core", "polygon is not counterclockwise");
        if (!polygon_is_simple(poly))
            throw Error(ErrorCode::SelfIntersectingBoundary, "core", "polygon boundary self-intersects");
        for (int k = 0; k < static_cast<int>(poly.size()); ++k) {
            EdgeRef r = pairing_[p][k];
            if (r.poly < 0 || r.poly >= np || r.edge < 0 ||
                r.edge >= static_cast<int>(polygons_[r.poly].size()))
                throw Error(ErrorCode::InvalidSurface, "core", "pairing refers to a missing edge");
            if (!(pairing_[r.poly][r.edge] == EdgeRef{p, k}) || (r.poly == p && r.edge == k))
                throw Error(ErrorCode::InvalidSurface, "core", "pairing is not a fixed-point-free involution");
            if (polygons_[r.poly][r.edge] != -poly[k])
                throw Error(ErrorCode::InvalidSurface, "core", "paired edges are not opposite vectors");
        }
    }

    std::vector<std::array<Vec2, 3>> tedges;
    std::vector<std::array<HalfEdge, 3>> glue;
    std::vector<std::array<std::pair<int, int>, 3>> tri_corner;  // (poly, vertex)
    edge_halfedge_.resize(np);
    std::map<std::tuple<int, int, int>, HalfEdge> diag;
    for (int p = 0; p < np; ++p) {
        const auto& poly = polygons_[p];
        int n = static_cast<int>(poly.size());
        auto pos = vertex_positions(poly);
        edge_halfedge_[p].assign(n, {});
        for (const auto& t : ear_clip(pos)) {
            int ti = static_cast<int>(tedges.size());
            std::array<Vec2, 3> e;
            for (int s = 0; s < 3; ++s) {
                int a = t[s], b = t[(s + 1) % 3];
                e[s] = pos[b] - pos[a];
                if (b == (a + 1) % n)
                    edge_halfedge_[p][a] = {ti, s};
                else
                    diag[{p, a, b}] = {ti, s};
            }
            tedges.push_back(e);
            glue.push_back({});
            tri_corner.push_back({std::pair{p, t[0]}, std::pair{p, t[1]}, std::pair{p, t[2]}});
        }
    }
    for (const auto& [key, h] : diag) {
        auto [p, a, b] = key;
        glue[h.tri][h.side] = diag.at({p, b, a});
    }
    for (int p = 0; p < np; ++p)
        for (int k = 0; k < static_cast<int>(polygons_[p].size()); ++k) {
            HalfEdge h = edge_halfedge_[p][k];
            EdgeRef r = pairing_[p][k];
            glue[h.tri][h.side] = edge_halfedge_[r.poly][r.edge];
        }
    tri_ = Triangulation(std::move(tedges), std::move(glue));

    corner_vertex_.resize(np);
    for (int p = 0; p < np; ++p) corner_vertex_[p].assign(polygons_[p].size(), -1);
    for (int t = 0; t < tri_.num_triangles(); ++t)
        for (int i = 0; i < 3; ++i) {
            auto [p, k] = tri_corner[t][i];
            corner_vertex_[p][k] = tri_.vertex_of(t, i);
        }

    // Connectivity of the gluing.
    std::vector<bool> seen(tri_.num_triangles(), false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int count = 0;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        ++count;
        for (int i = 0; i < 3; ++i) {
            int u = tri_.opposite(t, i).tri;
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
        }
    }
    if (count != tri_.num_triangles())
        throw Error(ErrorCode::InvalidSurface, "core", "gluing is not connected");

    int chi = tri_.euler_characteristic();
    if (chi % 2 != 0)
        throw Error(ErrorCode::InvalidSurface, "core", "odd Euler characteristic");
    genus_ = (2 - chi) / 2;
    std::vector<int> degs;
    int excess = 0;
    for (int v = 0; v < tri_.num_vertices(); ++v) {
        if (tri_.angle_multiple(v) < 1)
            throw Error(ErrorCode::InvalidSurface, "core", "cone angle below 2 pi");
        degs.push_back(tri_.angle_multiple(v) - 1);
        excess += tri_.angle_multiple(v) - 1;
    }
    if (genus_ < 1 || excess != 2 * genus_ - 2)
        throw Error(ErrorCode::InvalidSurface, "core", "Gauss-Bonnet check failed");
    stratum_ = Stratum(degs);
    raw_area_ = tri_.area();
}

Rational TranslationSurface::shoelace_area() const
{
    Rational a = 0;
    for (const auto& poly : polygons_) a += signed_area2(poly);
    return a / 2 * scale_sq_;
}

TranslationSurface build_from_polygon(const std::vector<Vec2>& vectors, const std::vector<int>& pi,
                                      Backend backend)
{
    int n = static_cast<int>(vectors.size());
    if (n < 2)
        throw Error(ErrorCode::NonClosingPolygon, "core", "need at least two vectors");
    if (static_cast<int>(pi.size()) != n)
        throw Error(ErrorCode::ConfigError, "core", "permutation size differs from vector count");
    std::vector<bool> used(n, false);
    for (int x : pi) {
        if (x < 0 || x >= n || used[x])
            throw Error(ErrorCode::ConfigError, "core", "pairing is not a permutation");
        used[x] = true;
    }
    for (const auto& v : vectors)
        if (v.is_zero()) throw Error(ErrorCode::ZeroEdge, "core", "zero edge vector");

    // Candidate boundary: first line forward, second line backward.
    std::vector<Vec2> edges;
    std::vector<int> label;  // vector index, sign encoded as +/-(i+1)
    for (int i = 0; i < n; ++i) {
        edges.push_back(vectors[i]);
        label.push_back(i + 1);
    }
    for (int k = n - 1; k >= 0; --k) {
        edges.push_back(-vectors[pi[k]]);
        label.push_back(-(pi[k] + 1));
    }
    Rational a2 = signed_area2(edges);
    if (a2 == 0)
        throw Error(ErrorCode::NonClosingPolygon, "core", "broken lines do not bound a polygon");
    if (a2 < 0) {
        edges.clear();
        label.clear();
        for (int k = 0; k < n; ++k) {
            edges.push_back(vectors[pi[k]]);
            label.push_back(pi[k] + 1);
        }
        for (int i = n - 1; i >= 0; --i) {
            edges.push_back(-vectors[i]);
            label.push_back(-(i + 1));
        }
    }
    if (!polygon_is_simple(edges))
        throw Error(ErrorCode::SelfIntersectingBoundary, "core", "broken lines do not bound an embedded polygon");
    std::vector<EdgeRef> pairing(2 * n);
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
            if (label[a] == -label[b]) pairing[a] = {0, b};
    return TranslationSurface({edges}, {pairing}, backend);
}

TranslationSurface surface_from_triangulation(const Triangulation& tri, Backend backend,
                                              const Rational& length_scale_sq)
{
    std::vector<std::vector<Vec2>> polys;
    std::vector<std::vector<EdgeRef>> pairing;
    for (int t = 0; t < tri.num_triangles(); ++t) {
        polys.push_back({tri.edge(t, 0), tri.edge(t, 1), tri.edge(t, 2)});
        std::vector<EdgeRef> row;
        for (int i = 0; i < 3; ++i) {
            HalfEdge h = tri.opposite(t, i);
            row.push_back({h.tri, h.side});
        }
        pairing.push_back(row);
    }
    return TranslationSurface(std::move(polys), std::move(pairing), backend, length_scale_sq);
}

TranslationSurface apply_gl2(const TranslationSurface& s, const Rational& a, const Rational& b,
                             const Rational& c, const Rational& d)
{
    if (a * d - b * c <= 0)
        throw Error(ErrorCode::NonPositiveDeterminant, "core", "matrix determinant must be positive");
    auto polys = s.polygons();
    for (auto& poly : polys)
        for (auto& e : poly) e = Vec2(a * e.x + b * e.y, c * e.x + d * e.y);
    return TranslationSurface(std::move(polys), s.pairing(), s.backend(), s.length_scale_sq());
}

TranslationSurface apply_gl2(const TranslationSurface& s, double a, double b, double c, double d)
{
    return apply_gl2(s, exact_rational(a), exact_rational(b), exact_rational(c), exact_rational(d));
}

TranslationSurface normalize_area(const TranslationSurface& s)
{
    if (s.backend() == Backend::Exact)
        return TranslationSurface(s.polygons(), s.pairing(), s.backend(), Rational(1) / s.raw_area());
    double area = to_double(s.area());
    Rational f = exact_rational(std::sqrt(to_double(s.length_scale_sq())) / std::sqrt(area));
    if (area == 1.0) f = 1;
    auto polys = s.polygons();
    for (auto& poly : polys)
        for (auto& e : poly) e = e * f;
    return TranslationSurface(std::move(polys), s.pairing(), s.backend(), 1);
}

}  // namespace flatlab
