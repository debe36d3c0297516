#include "fixtures.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/sampling.hpp"
#include "flatlab/serialize.hpp"

#include <doctest.h>

using namespace flatlab;
using fixtures::v;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::VersionMismatch;
}

// Independent genus count: vertices of the single polygon grouped by the
// corner identification rule, then Euler characteristic V - E + F.
int genus_by_corner_classes(const TranslationSurface& s)
{
    int vcount = s.num_vertices();
    int edges = 0, faces = 0;
    for (const auto& p : s.polygons()) {
        edges += static_cast<int>(p.size());
        ++faces;
    }
    return (2 - (vcount - edges / 2 + faces)) / 2;
}

}  // namespace

TEST_CASE("unit square torus")
{
    auto t = fixtures::square_torus();
    CHECK(t.genus() == 1);
    CHECK(t.stratum() == Stratum({0}));
    CHECK(t.area() == 1);
    CHECK(t.num_vertices() == 1);
}

TEST_CASE("genus two example has a single 6 pi cone point")
{
    auto s = fixtures::genus_two_example();
    CHECK(s.genus() == 2);
    CHECK(s.stratum() == Stratum({2}));
    CHECK(s.num_vertices() == 1);
    CHECK(s.angle_multiple(0) == 3);
    CHECK(s.area() == s.shoelace_area());
}

TEST_CASE("degenerate inputs")
{
    CHECK(code_of([] { build_from_polygon({v(1, 0), v(-1, 0)}, {0, 1}); }) == ErrorCode::NonClosingPolygon);
    CHECK(code_of([] { build_from_polygon({v(1, 0), v(0, 0)}, {1, 0}); }) == ErrorCode::ZeroEdge);
    CHECK(code_of([] { build_from_polygon({v(1, 1), v(1, -1), v(1, 0)}, {0, 2, 1}); }) ==
          ErrorCode::SelfIntersectingBoundary);
}

TEST_CASE("gl2 action")
{
    auto s = fixtures::genus_two_example();
    auto id = apply_gl2(s, 1.0, 0.0, 0.0, 1.0);
    CHECK(id.polygons() == s.polygons());
    auto d = apply_gl2(s, Rational(2), Rational(0), Rational(0), Rational(1, 2));
    CHECK(d.area() == s.area());
    CHECK(d.stratum() == s.stratum());
    CHECK(d.polygons()[0][0].x == 2 * s.polygons()[0][0].x);
    // Pythagorean rotation keeps the metric.
    Rational c(3, 5), sn(4, 5);
    auto r = apply_gl2(s, c, -sn, sn, c);
    CHECK(r.stratum() == s.stratum());
    CHECK(r.area() == s.area());
    CHECK(code_of([&] { apply_gl2(s, 0.0, 1.0, 1.0, 0.0); }) == ErrorCode::NonPositiveDeterminant);
    // Group action: M2(M1 S) = (M2 M1) S.
    auto a = apply_gl2(apply_gl2(s, Rational(1), Rational(2), Rational(0), Rational(1)),
                       Rational(3), Rational(0), Rational(1), Rational(1));
    auto b = apply_gl2(s, Rational(3), Rational(6), Rational(1), Rational(3));
    CHECK(a.polygons() == b.polygons());
}

TEST_CASE("area normalization")
{
    auto t2 = fixtures::square_torus(2);
    auto n = normalize_area(t2);
    CHECK(n.area() == 1);
    CHECK(normalize_area(fixtures::square_torus()).area() == 1);
    auto f = normalize_area(build_from_polygon({v(1, 2), v(2, 1), v(1, -1), v(2, -2)}, {3, 2, 1, 0},
                                               Backend::Float));
    CHECK(std::abs(to_double(f.area()) - 1.0) < 1e-12);
    CHECK(f.length_scale_sq() == 1);
}

TEST_CASE("random samples land in the requested stratum")
{
    for (auto degs : std::vector<std::vector<int>>{{0}, {2}, {1, 1}, {4}, {2, 2}, {1, 1, 1, 1}}) {
        Stratum st(degs);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto s = sample_random(st, seed);
            CHECK(s.stratum() == st);
            CHECK(s.area() == 1);
            CHECK(s.area() == s.shoelace_area());
            CHECK(genus_by_corner_classes(s) == st.genus());
            int excess = 0;
            for (int v = 0; v < s.num_vertices(); ++v) excess += s.angle_multiple(v) - 1;
            CHECK(excess == 2 * s.genus() - 2);
        }
    }
    auto a = sample_random(Stratum({2}), 42);
    auto b = sample_random(Stratum({2}), 42);
    CHECK(a.polygons() == b.polygons());
    CHECK(code_of([] { sample_random(Stratum({3}), 1); }) == ErrorCode::InvalidStratum);
}

TEST_CASE("stratum invariant under the group action and normalization")
{
    auto s = sample_random(Stratum({1, 1}), 5);
    auto m = apply_gl2(s, Rational(5), Rational(3), Rational(1), Rational(2));
    CHECK(m.stratum() == s.stratum());
    CHECK(normalize_area(m).stratum() == s.stratum());
    CHECK(normalize_area(m).area() == 1);
}

TEST_CASE("json round trip")
{
    auto s = sample_random(Stratum({1, 1}), 9);
    auto j = surface_to_json(s);
    auto back = surface_from_json(j);
    CHECK(back.polygons() == s.polygons());
    CHECK(back.area() == s.area());
    CHECK(back.stratum() == s.stratum());
}

TEST_CASE("Delaunay flips keep the surface")
{
    auto s = sample_random(Stratum({1, 1}), 3);
    Triangulation t = s.triangulation();
    t.make_delaunay();
    for (int a = 0; a < t.num_triangles(); ++a)
        for (int i = 0; i < 3; ++i) CHECK(t.is_delaunay_edge(a, i));
    CHECK(t.area() == s.raw_area());
    CHECK(t.num_vertices() == s.num_vertices());
    auto back = surface_from_triangulation(t, Backend::Exact, s.length_scale_sq());
    CHECK(back.stratum() == s.stratum());
}
