#include "doctest.h"
#include "fixtures.hpp"

#include "flatlab/sampling.hpp"
#include "flatlab/zippered.hpp"

#include <cmath>

using namespace flatlab;
using fixtures::v;

namespace {

TranslationSurface sheared_genus_two()
{
    Rational s = frac(1234577, 3001999), t = frac(7654321, 19999999);
    return apply_gl2(fixtures::genus_two_example(), Rational(1), s, t, 1 + s * t);
}

ZipperedRectangles unit_base(ZipperedRectangles z)
{
    Rational b = z.base();
    for (auto& l : z.lambda) l /= b;
    for (auto& t : z.tau) t *= b;
    return z;
}

}  // namespace

TEST_CASE("sheared torus unwraps into two rectangles of total area one")
{
    auto S = build_from_polygon({v(1, 0), Vec2(frac(3, 7), 1)}, {1, 0});
    auto Z = to_zippered_rectangles(S);
    CHECK(Z.size() == 2);
    CHECK(Z.area() == 1);
    auto R = from_zippered_rectangles(Z);
    CHECK(R.stratum() == S.stratum());
    CHECK(R.raw_area() == 1);
}

TEST_CASE("genus two example unwraps into four rectangles")
{
    auto S = sheared_genus_two();
    auto Z = to_zippered_rectangles(S);
    CHECK(Z.size() == 4);
    CHECK(Z.area() == S.raw_area());
    CHECK(Z.area() * S.length_scale_sq() == S.shoelace_area());
    auto R = from_zippered_rectangles(Z);
    CHECK(R.stratum() == Stratum({2}));
    CHECK(R.raw_area() == S.raw_area());
}

TEST_CASE("zippered rectangles of random surfaces preserve area and stratum")
{
    for (const char* name : {"0", "2", "1,1", "4", "2,2"}) {
        Stratum st = Stratum::parse(name);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            auto S = sample_random(st, seed);
            auto Z = to_zippered_rectangles(S);
            CHECK(Z.area() * S.length_scale_sq() == S.shoelace_area());
            for (const auto& h : Z.heights()) CHECK(h > 0);
            auto R = from_zippered_rectangles(Z);
            CHECK(R.stratum() == st);
            CHECK(R.area() == S.area());
            auto Z2 = to_zippered_rectangles(R);
            CHECK(Z2.area() == Z.area());
        }
    }
}

TEST_CASE("rearrangement transforms heights by the transposed matrix")
{
    auto Z = to_zippered_rectangles(sample_random(Stratum({1, 1}), 9));
    for (int step = 0; step < 30; ++step) {
        auto r = zippered_rauzy_step(Z);
        auto h = Z.heights();
        auto h2 = r.next.heights();
        const int n = Z.size();
        for (int k = 0; k < n; ++k) {
            Rational s = 0;
            for (int j = 0; j < n; ++j) s += Rational(r.A(j, k)) * h[j];
            CHECK(s == h2[k]);
        }
        CHECK(r.next.area() == Z.area());
        CHECK(valid_suspension(r.next.perm, r.next.tau));
        Z = r.next;
    }
    auto R = from_zippered_rectangles(Z);
    CHECK(R.stratum() == Stratum({1, 1}));
}

TEST_CASE("return time formula")
{
    ZipperedRectangles Z;
    Z.perm = Permutation::symmetric(2);
    Z.lambda = {frac(5, 10), frac(5, 10)};
    Z.tau = {Rational(1), Rational(-1)};
    CHECK_THROWS_AS(teich_return_time(Z), Error);
    Z.lambda = {frac(7, 10), frac(3, 10)};
    Z.perm = Permutation({0, 1}, {1, 0});
    Z.lambda = {frac(5, 10), frac(5, 10)};
    Z.perm = Permutation({0, 1, 2}, {2, 1, 0});
    Z.lambda = {frac(2, 10), frac(3, 10), frac(5, 10)};
    Z.tau = {Rational(1), Rational(0), Rational(-1)};
    // |X_n| = 0.5 (top last), |X_k| = 0.2 (bottom last)
    auto t = teich_return_time(Z);
    CHECK(t.shrink == frac(2, 10));
    CHECK(std::abs(t.t0 + std::log(0.8)) < 1e-15);
    Z.lambda = {frac(5, 10), frac(2, 10), frac(3, 10)};
    t = teich_return_time(Z);
    CHECK(std::abs(t.t0 - 0.356675) < 1e-6);
}

TEST_CASE("renormalization restores unit base on the genus two example")
{
    auto Z = unit_base(to_zippered_rectangles(sheared_genus_two()));
    REQUIRE(Z.size() == 4);
    Rational area = Z.area();
    for (int step = 0; step < 20; ++step) {
        auto t = teich_return_time(Z);
        CHECK(t.t0 > 0);
        Z = renormalize(Z, t);
        CHECK(Z.base() == 1);
        CHECK(Z.area() == area);
    }
}

TEST_CASE("degenerate base")
{
    ZipperedRectangles Z;
    Z.perm = Permutation::symmetric(2);
    Z.lambda = {frac(1, 2), frac(1, 4)};
    Z.tau = {Rational(1), Rational(-1)};
    CHECK_THROWS_AS(teich_return_time(Z), Error);
}
