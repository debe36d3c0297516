#pragma once

#include "flatlab/geometry.hpp"
#include "flatlab/triangulation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace flatlab {

enum class Backend { Exact, Float };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view s);

// Multiset of zero degrees, kept sorted in descending order.
struct Stratum {
    std::vector<int> degrees;

    Stratum() = default;
    explicit Stratum(std::vector<int> d);

    // Throws InvalidStratum when the degree sum is odd.
    int genus() const;
    int num_zeros() const { return static_cast<int>(degrees.size()); }
    int num_marked() const;
    bool all_even() const;
    // Interval count of a generic first-return map: 2g + m - 1.
    int iet_size() const { return 2 * genus() + num_zeros() - 1; }
    // Stratum with degree-0 entries removed (the torus keeps one).
    Stratum without_marked() const;
    std::string name() const;
    static Stratum parse(std::string_view text);

    bool operator==(const Stratum& o) const { return degrees == o.degrees; }
    bool operator!=(const Stratum& o) const { return !(*this == o); }
};

struct EdgeRef {
    int poly = -1;
    int edge = -1;
    bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
};

// Union of ccw polygons (edge vectors) glued by translations. Coordinates
// are stored exactly; physical lengths are raw lengths times
// sqrt(length_scale_sq), which lets exact surfaces carry area exactly 1.
class TranslationSurface {
public:
    TranslationSurface(std::vector<std::vector<Vec2>> polygons,
                       std::vector<std::vector<EdgeRef>> pairing,
                       Backend backend = Backend::Exact,
                       Rational length_scale_sq = 1);

    const std::vector<std::vector<Vec2>>& polygons() const { return polygons_; }
    const std::vector<std::vector<EdgeRef>>& pairing() const { return pairing_; }
    Backend backend() const { return backend_; }
    const Rational& length_scale_sq() const { return scale_sq_; }

    const Triangulation& triangulation() const { return tri_; }
    int vertex_of_polygon_corner(int poly, int corner) const { return corner_vertex_[poly][corner]; }
    // Triangulation half-edge carrying polygon edge (poly, edge).
    HalfEdge halfedge_of(int poly, int edge) const { return edge_halfedge_[poly][edge]; }

    int num_vertices() const { return tri_.num_vertices(); }
    int angle_multiple(int v) const { return tri_.angle_multiple(v); }
    int degree(int v) const { return tri_.angle_multiple(v) - 1; }
    int genus() const { return genus_; }
    const Stratum& stratum() const { return stratum_; }

    Rational raw_area() const { return raw_area_; }
    Rational area() const { return raw_area_ * scale_sq_; }
    // Sum of per-polygon shoelace areas (independent of the triangulation).
    Rational shoelace_area() const;

private:
    std::vector<std::vector<Vec2>> polygons_;
    std::vector<std::vector<EdgeRef>> pairing_;
    Backend backend_;
    Rational scale_sq_;
    Triangulation tri_;
    std::vector<std::vector<int>> corner_vertex_;
    std::vector<std::vector<HalfEdge>> edge_halfedge_;
    int genus_ = 0;
    Stratum stratum_;
    Rational raw_area_;
};

// Two broken lines v_0..v_{n-1} and v_{pi(0)}..v_{pi(n-1)} bounding a polygon.
TranslationSurface build_from_polygon(const std::vector<Vec2>& vectors,
                                      const std::vector<int>& pi,
                                      Backend backend = Backend::Exact);

TranslationSurface surface_from_triangulation(const Triangulation& tri, Backend backend,
                                              const Rational& length_scale_sq);

TranslationSurface apply_gl2(const TranslationSurface& s, const Rational& a, const Rational& b,
                             const Rational& c, const Rational& d);
TranslationSurface apply_gl2(const TranslationSurface& s, double a, double b, double c, double d);

TranslationSurface normalize_area(const TranslationSurface& s);

bool polygon_is_simple(const std::vector<Vec2>& edges);

}  // namespace flatlab
