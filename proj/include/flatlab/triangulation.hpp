#pragma once

#include "flatlab/geometry.hpp"

#include <array>
#include <vector>

namespace flatlab {

struct HalfEdge {
    int tri = -1;
    int side = -1;
    bool operator==(const HalfEdge& o) const { return tri == o.tri && side == o.side; }
    bool operator!=(const HalfEdge& o) const { return !(*this == o); }
    bool operator<(const HalfEdge& o) const
    {
        return tri != o.tri ? tri < o.tri : side < o.side;
    }
};

// Corner idx of triangle tri: the vertex at the start of edge idx.
struct Corner {
    int tri = -1;
    int idx = -1;
    bool operator==(const Corner& o) const { return tri == o.tri && idx == o.idx; }
};

// Triangulated translation surface. Triangle t has ccw edge vectors
// edge(t,0..2); edge i runs from corner i to corner i+1.
class Triangulation {
public:
    Triangulation() = default;
    Triangulation(std::vector<std::array<Vec2, 3>> edges,
                  std::vector<std::array<HalfEdge, 3>> glue);

    int num_triangles() const { return static_cast<int>(edges_.size()); }
    const Vec2& edge(int t, int i) const { return edges_[t][i]; }
    const Vec2& edge(HalfEdge h) const { return edges_[h.tri][h.side]; }
    HalfEdge opposite(int t, int i) const { return glue_[t][i]; }
    HalfEdge opposite(HalfEdge h) const { return glue_[h.tri][h.side]; }
    // Position of corner i in the frame where corner 0 is the origin.
    Vec2 position(int t, int i) const;

    int num_vertices() const { return static_cast<int>(vertex_corners_.size()); }
    int vertex_of(int t, int i) const { return vertex_[t][i]; }
    int vertex_of(Corner c) const { return vertex_[c.tri][c.idx]; }
    // Cone angle of v divided by 2 pi.
    int angle_multiple(int v) const { return angle_multiple_[v]; }
    // Corners around v in ccw order.
    const std::vector<Corner>& corners_of(int v) const { return vertex_corners_[v]; }
    Corner next_ccw(Corner c) const;
    Corner next_cw(Corner c) const;
    // Half-open ccw sector [edge(c), -edge(prev)) of a corner.
    bool corner_contains(Corner c, const Vec2& d) const;
    // Every corner at v whose sector contains d (one per full turn).
    std::vector<Corner> corners_containing(int v, const Vec2& d) const;
    double corner_angle(Corner c) const;

    int num_edges() const { return num_edges_; }
    int edge_id(int t, int i) const { return edge_id_[t][i]; }
    int edge_sign(int t, int i) const { return edge_sign_[t][i]; }
    HalfEdge edge_rep(int e) const { return edge_rep_[e]; }

    Rational area() const;
    int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }

    // Replaces the diagonal of the quadrilateral around (t,i). Returns false
    // when the quadrilateral is not strictly convex.
    bool flip(int t, int i);
    bool is_delaunay_edge(int t, int i) const;
    // Sign of the incircle test of the far vertex across edge (t,i); zero
    // when the quadrilateral is cocircular.
    int incircle_sign(int t, int i) const;
    void make_delaunay(int max_flips = 1000000);
    // Removes vertices of angle 2 pi that are not in keep by retriangulating
    // their stars. keep is indexed by current vertex id.
    void remove_regular_vertices(const std::vector<bool>& keep);

    Triangulation transformed(const Rational& a, const Rational& b,
                              const Rational& c, const Rational& d) const;
    void check() const;

private:
    void rebuild();
    // Replaces the star of a regular vertex by a triangulation of its link.
    bool merge_star(int v);
    int removable_vertex() const;
    int removal_score(int v) const;

    std::vector<std::array<Vec2, 3>> edges_;
    std::vector<std::array<HalfEdge, 3>> glue_;
    std::vector<std::array<int, 3>> vertex_;
    std::vector<std::vector<Corner>> vertex_corners_;
    std::vector<int> angle_multiple_;
    std::vector<std::array<int, 3>> edge_id_;
    std::vector<std::array<int, 3>> edge_sign_;
    std::vector<HalfEdge> edge_rep_;
    int num_edges_ = 0;
    std::vector<std::array<int, 3>> tag_;
};

}  // namespace flatlab
