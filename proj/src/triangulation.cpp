#include "flatlab/triangulation.hpp"

#include "flatlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace flatlab {

namespace {

int nx(int i) { return (i + 1) % 3; }
int pv(int i) { return (i + 2) % 3; }

}  // namespace

Triangulation::Triangulation(std::vector<std::array<Vec2, 3>> edges,
                             std::vector<std::array<HalfEdge, 3>> glue)
    : edges_(std::move(edges)), glue_(std::move(glue))
{
    check();
    rebuild();
}

Vec2 Triangulation::position(int t, int i) const
{
    Vec2 p(0, 0);
    for (int k = 0; k < i; ++k)
        p += edges_[t][k];
    return p;
}

void Triangulation::check() const
{
    if (edges_.size() != glue_.size() || edges_.empty())
        throw Error(ErrorCode::InvalidSurface, "core", "empty or inconsistent triangulation");
    for (int t = 0; t < num_triangles(); ++t) {
        const auto& e = edges_[t];
        if (!(e[0] + e[1] + e[2]).is_zero())
            throw Error(ErrorCode::NonClosingPolygon, "core", "triangle does not close");
        if (cross(e[0], e[1]) <= 0)
            throw Error(ErrorCode::InvalidSurface, "core", "triangle not counterclockwise");
        for (int i = 0; i < 3; ++i) {
            HalfEdge h = glue_[t][i];
            if (h.tri < 0 || h.tri >= num_triangles() || h.side < 0 || h.side > 2)
                throw Error(ErrorCode::InvalidSurface, "core", "dangling gluing");
            if (glue_[h.tri][h.side] != HalfEdge{t, i} || (h.tri == t && h.side == i))
                throw Error(ErrorCode::InvalidSurface, "core", "gluing is not an involution");
            if (edges_[h.tri][h.side] != -e[i])
                throw Error(ErrorCode::InvalidSurface, "core", "glued edges are not parallel translates");
        }
    }
}

void Triangulation::rebuild()
{
    int nt = num_triangles();
    vertex_.assign(nt, {-1, -1, -1});
    vertex_corners_.clear();
    angle_multiple_.clear();
    const Vec2 east(1, 0);
    for (int t = 0; t < nt; ++t) {
        for (int i = 0; i < 3; ++i) {
            if (vertex_[t][i] >= 0) continue;
            int v = static_cast<int>(vertex_corners_.size());
            std::vector<Corner> ring;
            Corner c{t, i};
            int turns = 0;
            do {
                vertex_[c.tri][c.idx] = v;
                ring.push_back(c);
                if (corner_contains(c, east)) ++turns;
                c = next_ccw(c);
            } while (!(c == Corner{t, i}));
            vertex_corners_.push_back(std::move(ring));
            angle_multiple_.push_back(turns);
        }
    }
    edge_id_.assign(nt, {-1, -1, -1});
    edge_sign_.assign(nt, {0, 0, 0});
    edge_rep_.clear();
    for (int t = 0; t < nt; ++t) {
        for (int i = 0; i < 3; ++i) {
            if (edge_id_[t][i] >= 0) continue;
            int e = static_cast<int>(edge_rep_.size());
            HalfEdge o = glue_[t][i];
            edge_id_[t][i] = e;
            edge_sign_[t][i] = 1;
            edge_id_[o.tri][o.side] = e;
            edge_sign_[o.tri][o.side] = -1;
            edge_rep_.push_back({t, i});
        }
    }
    num_edges_ = static_cast<int>(edge_rep_.size());
}

Corner Triangulation::next_ccw(Corner c) const
{
    HalfEdge h = glue_[c.tri][pv(c.idx)];
    return {h.tri, h.side};
}

Corner Triangulation::next_cw(Corner c) const
{
    HalfEdge h = glue_[c.tri][c.idx];
    return {h.tri, nx(h.side)};
}

bool Triangulation::corner_contains(Corner c, const Vec2& d) const
{
    const Vec2& u = edges_[c.tri][c.idx];
    Vec2 w = -edges_[c.tri][pv(c.idx)];
    return in_sector(u, w, d);
}

std::vector<Corner> Triangulation::corners_containing(int v, const Vec2& d) const
{
    std::vector<Corner> out;
    for (const Corner& c : vertex_corners_[v])
        if (corner_contains(c, d)) out.push_back(c);
    return out;
}

double Triangulation::corner_angle(Corner c) const
{
    Vec2d u = to_double(edges_[c.tri][c.idx]);
    Vec2d w = to_double(-edges_[c.tri][pv(c.idx)]);
    return std::atan2(cross(u, w), dot(u, w));
}

Rational Triangulation::area() const
{
    Rational a = 0;
    for (const auto& e : edges_)
        a += cross(e[0], e[1]);
    return a / 2;
}

bool Triangulation::flip(int t, int i)
{
    HalfEdge o = glue_[t][i];
    int u = o.tri, j = o.side;
    if (u == t) return false;
    const Vec2 eu1 = edges_[u][nx(j)];   // A -> D
    const Vec2 eu2 = edges_[u][pv(j)];   // D -> B
    const Vec2 et1 = edges_[t][nx(i)];   // B -> C
    const Vec2 et2 = edges_[t][pv(i)];   // C -> A
    // Frame with A at the origin.
    Vec2 B = edges_[t][i];
    Vec2 C = B + et1;
    Vec2 D = eu1;
    Vec2 dc = D - C;
    Rational sa = cross(dc, Vec2(-C.x, -C.y));
    Rational sb = cross(dc, B - C);
    if (!((sa > 0 && sb < 0) || (sa < 0 && sb > 0))) return false;

    HalfEdge old_u1{u, nx(j)}, old_u2{u, pv(j)}, old_t1{t, nx(i)}, old_t2{t, pv(i)};
    HalfEdge new_u1{t, 0}, new_u2{u, 0}, new_t1{u, 1}, new_t2{t, 2};
    auto remap = [&](HalfEdge h) {
        if (h == old_u1) return new_u1;
        if (h == old_u2) return new_u2;
        if (h == old_t1) return new_t1;
        if (h == old_t2) return new_t2;
        return h;
    };
    HalfEdge ext_u1 = remap(glue_[u][nx(j)]);
    HalfEdge ext_u2 = remap(glue_[u][pv(j)]);
    HalfEdge ext_t1 = remap(glue_[t][nx(i)]);
    HalfEdge ext_t2 = remap(glue_[t][pv(i)]);

    if (!tag_.empty()) {
        int tA = tag_[t][i], tB = tag_[t][nx(i)], tC = tag_[t][pv(i)], tD = tag_[u][pv(j)];
        tag_[t] = {tA, tD, tC};
        tag_[u] = {tD, tB, tC};
    }
    edges_[t] = {eu1, C - D, et2};
    edges_[u] = {eu2, et1, D - C};
    glue_[t][1] = {u, 2};
    glue_[u][2] = {t, 1};
    auto link = [&](HalfEdge a, HalfEdge b) {
        glue_[a.tri][a.side] = b;
        glue_[b.tri][b.side] = a;
    };
    link(new_u1, ext_u1);
    link(new_u2, ext_u2);
    link(new_t1, ext_t1);
    link(new_t2, ext_t2);
    rebuild();
    return true;
}

bool Triangulation::is_delaunay_edge(int t, int i) const
{
    return incircle_sign(t, i) <= 0;
}

int Triangulation::incircle_sign(int t, int i) const
{
    HalfEdge o = glue_[t][i];
    // Corners of t relative to A = corner i, and the far vertex D of the neighbour.
    Vec2 B = edges_[t][i];
    Vec2 C = B + edges_[t][nx(i)];
    Vec2 D = edges_[o.tri][nx(o.side)];
    Vec2 a = Vec2(0, 0) - D, b = B - D, c = C - D;
    Rational det = (a.x * a.x + a.y * a.y) * cross(b, c)
                 - (b.x * b.x + b.y * b.y) * cross(a, c)
                 + (c.x * c.x + c.y * c.y) * cross(a, b);
    return sgn(det);
}

void Triangulation::make_delaunay(int max_flips)
{
    int flips = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < num_triangles(); ++t) {
            for (int i = 0; i < 3; ++i) {
                if (is_delaunay_edge(t, i)) continue;
                if (flip(t, i)) {
                    changed = true;
                    if (++flips > max_flips)
                        throw Error(ErrorCode::BudgetExceeded, "core", "Delaunay flip budget exceeded");
                }
            }
        }
    }
}

bool Triangulation::merge_star(int v)
{
    const auto ring = vertex_corners_[v];
    const int k = static_cast<int>(ring.size());
    if (k < 3) return false;
    for (int j = 0; j < k; ++j)
        for (int l = j + 1; l < k; ++l)
            if (ring[j].tri == ring[l].tri) return false;

    // Link polygon around v, ccw.
    std::vector<Vec2> w(k);
    std::vector<HalfEdge> outer(k);
    std::vector<int> tags(k, 0);
    for (int j = 0; j < k; ++j) {
        w[j] = edges_[ring[j].tri][ring[j].idx];
        outer[j] = {ring[j].tri, nx(ring[j].idx)};
        if (!tag_.empty()) tags[j] = tag_[ring[j].tri][nx(ring[j].idx)];
    }

    // Ear clipping. A handle names the edge leaving polygon vertex idx: either
    // an outer edge j (inner.tri < 0) or a diagonal glued to a new half-edge.
    struct Handle {
        int outer = -1;
        HalfEdge inner;
    };
    std::vector<int> poly(k);
    std::vector<Handle> handle(k);
    for (int j = 0; j < k; ++j) {
        poly[j] = j;
        handle[j].outer = j;
    }
    std::vector<std::array<Vec2, 3>> new_edges;
    std::vector<std::array<HalfEdge, 3>> new_glue;
    std::vector<std::array<int, 3>> new_tags;
    std::vector<HalfEdge> outer_new(k);
    auto place = [&](int q, int side, const Handle& h) {
        if (h.outer >= 0) {
            outer_new[h.outer] = {q, side};
            new_glue[q][side] = {-1, -1};
        } else {
            new_glue[q][side] = h.inner;
            new_glue[h.inner.tri][h.inner.side] = {q, side};
        }
    };
    while (poly.size() >= 3) {
        const int m = static_cast<int>(poly.size());
        int ear = -1;
        for (int c = 0; c < m && ear < 0; ++c) {
            const Vec2& A = w[poly[(c + m - 1) % m]];
            const Vec2& B = w[poly[c]];
            const Vec2& C = w[poly[(c + 1) % m]];
            if (m > 3 && cross(B - A, C - B) <= 0) continue;
            bool empty = true;
            for (int o = 0; o < m && empty; ++o) {
                if (o == c || o == (c + 1) % m || o == (c + m - 1) % m) continue;
                const Vec2& P = w[poly[o]];
                if (cross(B - A, P - A) >= 0 && cross(C - B, P - B) >= 0 && cross(A - C, P - C) >= 0)
                    empty = false;
            }
            if (empty) ear = c;
        }
        if (ear < 0) throw Error(ErrorCode::InvalidSurface, "core", "link polygon has no ear");
        const int ia = (ear + m - 1) % m, ic = (ear + 1) % m;
        const Vec2& A = w[poly[ia]];
        const Vec2& B = w[poly[ear]];
        const Vec2& C = w[poly[ic]];
        int q = static_cast<int>(new_edges.size());
        new_edges.push_back({B - A, C - B, A - C});
        new_glue.push_back({});
        new_tags.push_back({tags[poly[ia]], tags[poly[ear]], tags[poly[ic]]});
        place(q, 0, handle[ia]);
        place(q, 1, handle[ear]);
        if (m == 3) {
            place(q, 2, handle[ic]);
            break;
        }
        handle[ia] = Handle{-1, {q, 2}};
        poly.erase(poly.begin() + ear);
        handle.erase(handle.begin() + ear);
    }

    // New triangle q goes into slot ring[q].tri.
    auto slot = [&](int q) { return ring[q].tri; };
    std::map<std::pair<int, int>, HalfEdge> outer_map;
    for (int j = 0; j < k; ++j)
        outer_map[{outer[j].tri, outer[j].side}] = {slot(outer_new[j].tri), outer_new[j].side};
    std::vector<HalfEdge> ext(k);
    for (int j = 0; j < k; ++j) {
        HalfEdge e = glue_[outer[j].tri][outer[j].side];
        auto it = outer_map.find({e.tri, e.side});
        ext[j] = it != outer_map.end() ? it->second : e;
    }
    const int nq = static_cast<int>(new_edges.size());
    for (int q = 0; q < nq; ++q) {
        edges_[slot(q)] = new_edges[q];
        if (!tag_.empty()) tag_[slot(q)] = new_tags[q];
        for (int s = 0; s < 3; ++s)
            if (new_glue[q][s].tri >= 0) glue_[slot(q)][s] = {slot(new_glue[q][s].tri), new_glue[q][s].side};
    }
    for (int j = 0; j < k; ++j) {
        HalfEdge me{slot(outer_new[j].tri), outer_new[j].side};
        glue_[me.tri][me.side] = ext[j];
        glue_[ext[j].tri][ext[j].side] = me;
    }
    std::vector<int> dead;
    for (int q = nq; q < k; ++q) dead.push_back(ring[q].tri);
    std::sort(dead.rbegin(), dead.rend());
    for (int d : dead) {
        int last = num_triangles() - 1;
        if (d != last) {
            edges_[d] = edges_[last];
            glue_[d] = glue_[last];
            if (!tag_.empty()) tag_[d] = tag_[last];
            for (int i = 0; i < 3; ++i) {
                HalfEdge h = glue_[d][i];
                if (h.tri == last) {
                    h.tri = d;
                    glue_[d][i] = h;
                }
                glue_[h.tri][h.side] = {d, i};
            }
        }
        edges_.pop_back();
        glue_.pop_back();
        if (!tag_.empty()) tag_.pop_back();
    }
    rebuild();
    return true;
}

int Triangulation::removable_vertex() const
{
    for (int v = 0; v < num_vertices(); ++v) {
        Corner c = vertex_corners_[v][0];
        if (angle_multiple_[v] == 1 && tag_[c.tri][c.idx] == 0) return v;
    }
    return -1;
}

int Triangulation::removal_score(int v) const
{
    int loops = 0;
    for (const Corner& c : vertex_corners_[v])
        if (vertex_[c.tri][nx(c.idx)] == v) ++loops;
    return 1000 * loops + static_cast<int>(vertex_corners_[v].size());
}

void Triangulation::remove_regular_vertices(const std::vector<bool>& keep)
{
    tag_.assign(num_triangles(), {0, 0, 0});
    for (int t = 0; t < num_triangles(); ++t)
        for (int i = 0; i < 3; ++i)
            tag_[t][i] = keep[vertex_[t][i]] ? 1 : 0;
    std::mt19937 rng(12345);
    for (int target = removable_vertex(); target >= 0; target = removable_vertex()) {
        int guard = 0;
        while (!merge_star(target)) {
            if (++guard > 20000) throw Error(ErrorCode::InvalidSurface, "core", "vertex removal stalled");
            // Flip an edge of the star, preferring ones that remove loops at
            // the vertex or lower its degree; otherwise walk randomly.
            std::vector<HalfEdge> cand;
            for (const Corner& c : vertex_corners_[target])
                for (int i = 0; i < 3; ++i) cand.push_back({c.tri, i});
            const int current = removal_score(target);
            int best = current;
            HalfEdge best_edge;
            std::vector<HalfEdge> flippable;
            for (const HalfEdge& h : cand) {
                Triangulation trial = *this;
                if (!trial.flip(h.tri, h.side)) continue;
                flippable.push_back(h);
                int sc = trial.removal_score(trial.removable_vertex());
                if (sc < best) {
                    best = sc;
                    best_edge = h;
                }
            }
            if (flippable.empty()) throw Error(ErrorCode::InvalidSurface, "core", "vertex removal stalled");
            HalfEdge h = best < current ? best_edge : flippable[rng() % flippable.size()];
            flip(h.tri, h.side);
            target = removable_vertex();
        }
    }
    tag_.clear();
}

Triangulation Triangulation::transformed(const Rational& a, const Rational& b,
                                         const Rational& c, const Rational& d) const
{
    Triangulation out = *this;
    for (auto& tri : out.edges_)
        for (auto& e : tri)
            e = Vec2(a * e.x + b * e.y, c * e.x + d * e.y);
    out.rebuild();
    return out;
}

}  // namespace flatlab
