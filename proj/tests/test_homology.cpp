#include "doctest.h"
#include "fixtures.hpp"

#include "flatlab/homology.hpp"
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

CycleModel model_of(const TranslationSurface& s) { return CycleModel(s, canonical_transversal(s)); }

// Combinatorial intersection matrix of a two-row permutation.
int omega_entry(const Permutation& p, int a, int b)
{
    bool top_before = p.top_pos(a) < p.top_pos(b);
    bool bottom_before = p.bottom_pos(a) < p.bottom_pos(b);
    if (top_before && !bottom_before) return 1;
    if (!top_before && bottom_before) return -1;
    return 0;
}

IntVec transvect(const IntVec& x, const IntVec& v)
{
    BigInt s = intersection(x, v);
    IntVec out = x;
    for (size_t i = 0; i < x.size(); ++i) out[i] += s * v[i];
    return out;
}

}  // namespace

TEST_CASE("torus cycles and holonomies")
{
    Rational alpha = frac(41421356, 100000000);
    auto m = model_of(sheared_torus(alpha));
    REQUIRE(m.size() == 2);
    CHECK(m.genus() == 1);
    const auto& t = m.first_return().tri;
    CHECK(chain_holonomy(t, m.chains()[0]) == Vec2(alpha - 1, 1));
    CHECK(chain_holonomy(t, m.chains()[1]) == Vec2(alpha, 1));
    // c_0 = c_1 - [horizontal], so <c_0, c_1> = -<horizontal, c_1> = -1.
    CHECK(m.omega()[0][1] == -1);
    CHECK(m.omega()[1][0] == 1);
    CHECK(intersection(m.cycles()[0], m.cycles()[1]) == -1);
}

TEST_CASE("intersection matrix matches the permutation")
{
    for (const char* name : {"0", "2", "1,1", "4", "2,2"}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto m = model_of(sample_random(Stratum::parse(name), seed));
            const Permutation& p = m.first_return().iet.perm();
            for (int a = 0; a < m.size(); ++a)
                for (int b = 0; b < m.size(); ++b) CHECK(m.omega()[a][b] == -omega_entry(p, a, b));
        }
    }
}

TEST_CASE("first return cycles generate homology")
{
    for (const char* name : {"2", "1,1", "1,1,1,1"}) {
        Stratum st = Stratum::parse(name);
        auto m = model_of(sample_random(st, 4));
        CHECK(m.size() == 2 * st.genus() + static_cast<int>(st.degrees.size()) - 1);
        auto basis = lattice_basis(m.cycles());
        CHECK(static_cast<int>(basis.size()) == 2 * st.genus());
        // Unimodular span: the echelon pivots are all +-1.
        for (size_t i = 0; i < basis.size(); ++i) {
            size_t c = 0;
            while (basis[i][c] == 0) ++c;
            CHECK(abs(basis[i][c]) == 1);
        }
    }
}

TEST_CASE("ergodic sums")
{
    Rational alpha = frac(41421356, 100000000);
    auto m = model_of(sheared_torus(alpha));
    Rational x0 = frac(1, 3);
    auto one = ergodic_cycle(m, x0, 1);
    CHECK(one.cycle == m.cycles()[m.first_return().iet.label_at(x0)]);

    // Direct simulation of the rotation x -> x - alpha mod 1.
    auto e = ergodic_cycle(m, x0, 10);
    Rational x = x0;
    long wraps = 0;
    for (int j = 0; j < 10; ++j) {
        if (x < alpha) {
            ++wraps;
            x += 1;
        }
        x -= alpha;
    }
    CHECK(e.visits[0] == wraps);
    CHECK(e.visits[1] == 10 - wraps);
    CHECK(e.end_point == x);

    auto h = model_of(sample_random(Stratum({2}), 3));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Rational y = generic_point(h, trial);
        long N = 100 + static_cast<long>(rng() % 1000), M = 50 + static_cast<long>(rng() % 1000);
        auto a = ergodic_cycle(h, y, N + M);
        auto b = ergodic_cycle(h, y, N);
        auto c = ergodic_cycle(h, b.end_point, M);
        for (size_t i = 0; i < a.cycle.size(); ++i) CHECK(a.cycle[i] == b.cycle[i] + c.cycle[i]);
    }
}

TEST_CASE("orbit through an endpoint is flagged")
{
    auto m = model_of(sheared_torus(frac(1, 3)));
    CHECK_THROWS_AS(ergodic_cycle(m, Rational(0), 5), Error);
}

TEST_CASE("torus asymptotic cycle is the dual of the horizontal form")
{
    Rational alpha = frac(41421356, 100000000);
    auto m = model_of(sheared_torus(alpha));
    RatVec c = dual_of_re_omega(m);
    // <gamma, c> = Re period for the loops themselves.
    for (int j = 0; j < m.size(); ++j) {
        IntVec cj = m.cycles()[j];
        Rational pair = 0;
        const int g = m.genus();
        for (int i = 0; i < g; ++i) pair += Rational(cj[i]) * c[g + i] - Rational(cj[g + i]) * c[i];
        CHECK(pair == chain_holonomy(m.first_return().tri, m.chains()[j]).x);
    }
    auto a = asymptotic_cycle(m, 100000);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - to_double(c[i])) < 1e-3);
}

TEST_CASE("asymptotic cycle of a genus two surface")
{
    auto m = model_of(sample_random(Stratum({2}), 8));
    RatVec c = dual_of_re_omega(m);
    double norm = 0, err = 0;
    auto a = asymptotic_cycle(m, 300000);
    for (size_t i = 0; i < a.size(); ++i) {
        norm += to_double(c[i]) * to_double(c[i]);
        err += (a[i] - to_double(c[i])) * (a[i] - to_double(c[i]));
    }
    CHECK(std::sqrt(err / norm) < 2e-2);
}

TEST_CASE("dual of the horizontal form does not depend on the basis")
{
    auto m = model_of(sample_random(Stratum({1, 1}), 2));
    const int d = 2 * m.genus();
    RatVec c = dual_of_re_omega(m);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        // Random symplectic basis change by transvections.
        std::vector<IntVec> B;
        for (int i = 0; i < d; ++i) {
            IntVec e(d, 0);
            e[i] = 1;
            B.push_back(e);
        }
        for (int s = 0; s < 6; ++s) {
            IntVec w(d);
            for (auto& x : w) x = static_cast<long>(rng() % 5) - 2;
            for (auto& b : B) b = transvect(b, w);
        }
        auto G = gram_matrix(B);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) CHECK(G[i][j] == intersection(
                    [&] { IntVec e(d, 0); e[i] = 1; return e; }(), [&] { IntVec e(d, 0); e[j] = 1; return e; }()));
        // Periods in the new basis and the dual solved there.
        std::vector<Rational> p(d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) p[i] += Rational(B[i][k]) * m.basis_periods()[k].x;
        RatVec c2(d);
        const int g = m.genus();
        for (int i = 0; i < g; ++i) {
            c2[g + i] = p[i];
            c2[i] = -p[g + i];
        }
        // Map back: c = sum c2_i B_i.
        RatVec back(d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) back[k] += c2[i] * Rational(B[i][k]);
        CHECK(back == c);
    }
}

TEST_CASE("cycles transform by the Rauzy matrix under induction")
{
    auto S = sample_random(Stratum({1, 1}), 6);
    Transversal X = canonical_transversal(S);
    CycleModel m(S, X);
    IetQ T = m.first_return().iet;
    // Model label of each Rauzy label (same domain position).
    std::vector<int> to_model(T.size());
    for (int a = 0; a < T.size(); ++a) to_model[a] = a;
    for (int step = 0; step < 10; ++step) {
        auto r = rauzy_step(T);
        Transversal Y{X.start, r.next.total()};
        CycleModel m2(S, Y);
        const IetQ& U = m2.first_return().iet;
        REQUIRE(U.size() == T.size());
        std::vector<int> next_map(T.size());
        for (int pos = 0; pos < U.size(); ++pos) {
            int lab_new = U.perm().top[pos];
            int lab = r.next.perm().top[pos];
            CHECK(U.length(lab_new) == r.next.length(lab));
            // Symplectic coordinates depend on the basis; compare classes
            // through intersections with the original loops.
            IntVec want(m.size(), 0);
            for (int j = 0; j < m.size(); ++j)
                for (int k = 0; k < m.size(); ++k) want[k] += r.A(j, lab) * m.omega()[to_model[j]][k];
            CHECK(m.intersections(m2.chains()[lab_new]) == want);
            next_map[lab] = lab_new;
        }
        to_model = next_map;
        T = r.next;
        X = Y;
        m = m2;
    }
}
