#include "doctest.h"
#include "fixtures.hpp"

#include "flatlab/first_return.hpp"
#include "flatlab/iet.hpp"
#include "flatlab/sampling.hpp"

#include <cmath>
#include <random>

using namespace flatlab;
using fixtures::v;

namespace {

TranslationSurface sheared_torus(const Rational& alpha)
{
    return build_from_polygon({v(1, 0), Vec2(alpha, 1)}, {1, 0});
}

TranslationSurface sheared_genus_two()
{
    Rational s = frac(1234577, 3001999), t = frac(7654321, 19999999);
    return apply_gl2(fixtures::genus_two_example(), Rational(1), s, t, 1 + s * t);
}

// Induced map on [0, total') obtained by iterating T until the orbit returns.
// Also counts visits per label of T.
Rational induced_by_simulation(const IetQ& T, const Rational& x, const Rational& cut, std::vector<int>& visits)
{
    Rational y = x;
    for (int guard = 0; guard < 10000; ++guard) {
        visits[T.label_at(y)] += 1;
        y = T.map(y);
        if (y < cut) return y;
    }
    FAIL("orbit did not return");
    return 0;
}

IetQ random_iet(std::mt19937_64& rng, const Permutation& p, int words = 1)
{
    if (words > 1) {
        std::vector<Rational> l;
        for (int k = 0; k < p.size(); ++k) {
            BigInt num = 1;
            for (int w = 0; w < words; ++w) num = num * BigInt(4294967296.0) + BigInt(static_cast<unsigned long>(rng() >> 32));
            l.push_back(Rational(num));
        }
        return IetQ(p, l);
    }
    std::vector<Rational> l;
    for (int k = 0; k < p.size(); ++k) l.push_back(frac(1 + static_cast<long>(rng() % 1000000007), 1000000007));
    return IetQ(p, l);
}

}  // namespace

TEST_CASE("sheared torus gives a two interval rotation")
{
    Rational alpha = frac(41421356, 100000000);
    auto S = sheared_torus(alpha);
    Transversal X = canonical_transversal(S);
    CHECK(X.length == 1);
    FirstReturn fr = first_return(S, X);
    REQUIRE(fr.iet.size() == 2);
    CHECK(fr.canonical);
    for (Rational x : {frac(1, 10), frac(1, 2), frac(9, 10)}) {
        Rational expected = x - alpha;
        if (expected < 0) expected += 1;
        CHECK(fr.iet.map(x) == expected);
    }
    CHECK(fr.heights[0] == 1);
    CHECK(fr.heights[1] == 1);
}

TEST_CASE("genus two example has four intervals")
{
    auto S = sheared_genus_two();
    REQUIRE(S.stratum() == Stratum({2}));
    Transversal X = canonical_transversal(S);
    CHECK(X.length * X.length >= S.raw_area());
    FirstReturn fr = first_return(S, X);
    CHECK(fr.iet.size() == 4);
    CHECK(fr.canonical);
    Rational area = 0;
    for (int k = 0; k < fr.iet.size(); ++k) area += fr.iet.length(k) * fr.heights[k];
    CHECK(area == S.raw_area());
}

TEST_CASE("random surfaces have n = 2g + m - 1 intervals")
{
    for (const char* name : {"0", "2", "1,1", "4"}) {
        Stratum st = Stratum::parse(name);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto S = sample_random(st, seed);
            FirstReturn fr = first_return(S, canonical_transversal(S));
            CHECK(fr.iet.size() == 2 * st.genus() + static_cast<int>(st.degrees.size()) - 1);
            Rational area = 0;
            for (int k = 0; k < fr.iet.size(); ++k) area += fr.iet.length(k) * fr.heights[k];
            CHECK(area == S.raw_area());
        }
    }
}

TEST_CASE("zero length transversal is rejected")
{
    auto S = sheared_torus(frac(1, 3));
    Transversal X = canonical_transversal(S);
    X.length = 0;
    CHECK_THROWS_AS(first_return(S, X), Error);
}

TEST_CASE("rauzy step matches the induced map and length duality")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        IetQ T = random_iet(rng, stratum_permutation(Stratum({1, 1})));
        for (int step = 0; step < 10; ++step) {
            auto r = rauzy_step(T);
            const int n = T.size();
            CHECK(r.A.det() * r.A.det() == 1);
            for (int j = 0; j < n; ++j) {
                Rational s = 0;
                for (int k = 0; k < n; ++k) s += Rational(r.A(j, k)) * r.next.length(k);
                CHECK(s == T.length(j));
            }
            Rational cut = r.next.total();
            for (int k = 0; k < n; ++k) {
                Rational x = r.next.domain_start(k) + r.next.length(k) / 3;
                std::vector<int> visits(n, 0);
                Rational y = induced_by_simulation(T, x, cut, visits);
                CHECK(y == r.next.map(x));
                for (int j = 0; j < n; ++j) CHECK(BigInt(visits[j]) == r.A(j, k));
            }
            T = r.next;
        }
    }
}

TEST_CASE("products of rauzy matrices stay unimodular and become positive")
{
    std::mt19937_64 rng(5);
    IetQ T = random_iet(rng, stratum_permutation(Stratum({2})));
    IntMatrix P = IntMatrix::identity(T.size());
    bool positive = false;
    for (int k = 0; k < 200 && !positive; ++k) {
        auto r = rauzy_step(T);
        P = P * r.A;
        T = r.next;
        CHECK(P.det() * P.det() == 1);
        positive = P.all_positive();
    }
    CHECK(positive);
}

TEST_CASE("ties raise TieBreak")
{
    IetQ T(Permutation::symmetric(2), {frac(1, 2), frac(1, 2)});
    CHECK_THROWS_AS(rauzy_step(T), Error);
    try {
        rauzy_step(T);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TieBreak);
    }
    IetD D(Permutation::symmetric(2), {0.5, 0.5 + 1e-15});
    CHECK_THROWS_AS(rauzy_step(D), Error);
}

TEST_CASE("reducible permutations are rejected")
{
    CHECK_THROWS_AS(IetQ(Permutation({0, 1}, {0, 1}), {frac(1, 2), frac(1, 2)}), Error);
}

TEST_CASE("zorich step groups a Euclidean run")
{
    for (long k = 1; k <= 7; ++k) {
        IetQ T(Permutation::symmetric(2), {Rational(1), Rational(k) + frac(1, 3)});
        auto z = zorich_step(T);
        CHECK(z.rauzy_steps == k);
        IntMatrix B = z.B();
        CHECK(B(1, 0) == k);
        IntMatrix P = IntMatrix::identity(2);
        IetQ U = T;
        for (long s = 0; s < k; ++s) {
            auto r = rauzy_step(U);
            P = P * r.A;
            U = r.next;
        }
        CHECK(P == B);
        CHECK(U.lengths() == z.next.lengths());
    }
}

TEST_CASE("zorich matrices equal products of rauzy matrices on random IETs")
{
    std::mt19937_64 rng(17);
    IetQ T = random_iet(rng, stratum_permutation(Stratum({1, 1})));
    for (int step = 0; step < 50; ++step) {
        auto z = zorich_step(T);
        IntMatrix P = IntMatrix::identity(T.size());
        IetQ U = T;
        for (BigInt s = 0; s < z.rauzy_steps; ++s) {
            auto r = rauzy_step(U);
            P = P * r.A;
            U = r.next;
        }
        CHECK(P == z.B());
        CHECK(U.perm() == z.next.perm());
        T = z.next;
    }
}

TEST_CASE("renormalized zorich orbit keeps lengths inside (0,1)")
{
    std::mt19937_64 rng(23);
    IetQ T = random_iet(rng, stratum_permutation(Stratum({1, 1})), 80).normalized();
    for (int step = 0; step < 1000; ++step) {
        T = zorich_step(T).next.normalized();
        for (const auto& l : T.lengths()) {
            CHECK(l > 0);
            CHECK(l < 1);
        }
    }
}

TEST_CASE("golden rotation has partial quotients one")
{
    const double phi = (1 + std::sqrt(5.0)) / 2;
    IetD T(Permutation::symmetric(2), {1.0, phi});
    std::vector<int> types;
    for (int step = 0; step < 25; ++step) {
        auto z = zorich_step(T);
        CHECK(z.rauzy_steps == 1.0);
        types.push_back(static_cast<int>(z.type));
        T = z.next.normalized();
    }
    for (size_t k = 1; k < types.size(); ++k) CHECK(types[k] != types[k - 1]);
}

TEST_CASE("teichmuller time of a step")
{
    CHECK(std::abs(teich_time(Rational(1), frac(7, 10)) - 0.356675) < 1e-6);
}
