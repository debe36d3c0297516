#include "doctest.h"

#include "flatlab/errors.hpp"
#include "flatlab/lyapunov.hpp"

#include <algorithm>
#include <cmath>

using namespace flatlab;

namespace {

ExponentOptions steps(long n, int every = 1)
{
    ExponentOptions o;
    o.steps = n;
    o.orthonormalize_every = every;
    return o;
}

// Surfaces with long binary expansions, so the exact induction runs deep.
TranslationSurface deep_sample(const char* stratum, std::uint64_t seed)
{
    SampleOptions opt;
    opt.precision_bits = 3500;
    return sample_random(Stratum::parse(stratum), seed, opt);
}

DeviationOptions deep_fit()
{
    DeviationOptions o;
    o.log_n_max = 2000;
    return o;
}

bool within_sigma(double a, double sa, double b, double sb, double k)
{
    return std::abs(a - b) <= k * std::sqrt(sa * sa + sb * sb);
}

}  // namespace

TEST_CASE("torus has the single exponent one")
{
    auto e = cocycle_exponents(Stratum::parse("0"), 3, steps(20000));
    REQUIRE(e.values.size() == 1);
    CHECK(e.values[0] == 1.0);
    REQUIRE(e.spectrum.size() == 2);
    CHECK(e.spectrum[1] == doctest::Approx(-1).epsilon(1e-3));
}

TEST_CASE("top exponent per unit of Teichmueller time is one")
{
    ExponentOptions o = steps(200000);
    o.time_normalized = true;
    for (const char* st : {"0", "2", "1,1"}) CHECK(cocycle_exponents(Stratum::parse(st), 1, o).top_rate == doctest::Approx(1).epsilon(1e-2));
}

TEST_CASE("second exponent of H(2) agrees across seeds")
{
    std::vector<double> nu;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) nu.push_back(cocycle_exponents(Stratum::parse("2"), seed, steps(1000000)).values[1]);
    double mean = 0;
    for (double x : nu) mean += x / 5;
    for (double x : nu) CHECK(std::abs(x - mean) <= 0.02);
}

TEST_CASE("exponents are strictly ordered and positive")
{
    for (std::uint64_t seed : {1u, 2u}) {
        auto e = cocycle_exponents(sample_random(Stratum::parse("1,1"), seed), seed, steps(300000));
        REQUIRE(e.values.size() == 2);
        CHECK(1 - 2 * e.std_errors[1] > e.values[1]);
        CHECK(e.values[1] - 2 * e.std_errors[1] > 0);
    }
    auto e = cocycle_exponents(Stratum::parse("1,1,1,1"), 4, steps(300000));
    REQUIRE(e.values.size() == 3);
    CHECK(e.values[1] - 2 * e.std_errors[1] > e.values[2] + 2 * e.std_errors[2]);
    CHECK(e.values[2] - 2 * e.std_errors[2] > 0);
}

TEST_CASE("orthonormalization period does not change the estimate")
{
    auto ref = cocycle_exponents(Stratum::parse("1,1"), 7, steps(200000, 1));
    for (int k : {5, 20}) {
        auto e = cocycle_exponents(Stratum::parse("1,1"), 7, steps(200000, k));
        CHECK(within_sigma(e.values[1], e.std_errors[1], ref.values[1], ref.std_errors[1], 2));
    }
}

TEST_CASE("both cocycle conventions give the same exponents")
{
    ExponentOptions inv = steps(200000);
    inv.convention = CocycleConvention::InverseTranspose;
    auto a = cocycle_exponents(Stratum::parse("2"), 5, steps(200000));
    auto b = cocycle_exponents(Stratum::parse("2"), 5, inv);
    CHECK(within_sigma(a.values[1], a.std_errors[1], b.values[1], b.std_errors[1], 2));
}

TEST_CASE("full spectrum is symmetric")
{
    auto e = cocycle_exponents(Stratum::parse("1,1,1,1"), 2, steps(200000));
    const size_t n = e.spectrum.size();
    REQUIRE(n == 9);
    for (size_t i = 0; i < n; ++i) CHECK(std::abs(e.spectrum[i] + e.spectrum[n - 1 - i]) <= 0.05);
}

TEST_CASE("exponents do not depend on the surface within a component")
{
    auto a = cocycle_exponents(sample_random(Stratum::parse("2"), 11), 1, steps(400000));
    auto b = cocycle_exponents(sample_random(Stratum::parse("2"), 12), 2, steps(400000));
    CHECK(within_sigma(a.values[1], a.std_errors[1], b.values[1], b.std_errors[1], 2));
}

TEST_CASE("cocycle errors")
{
    ExponentOptions o = steps(20000);
    o.max_std_error = 1e-9;
    try {
        cocycle_exponents(Stratum::parse("2"), 1, o);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonConvergence);
    }
    CHECK_THROWS_AS(cocycle_exponents(Stratum::parse("2"), 1, steps(0)), Error);
}

TEST_CASE("lagrangian check")
{
    auto J1 = standard_symplectic_form(1);
    CHECK(lagrangian_check({{0.3, -2.0}}, J1));
    auto J2 = standard_symplectic_form(2);
    CHECK(lagrangian_check({{1, 0, 0, 0}, {0, 1, 0, 0}}, J2));
    // a_1 and b_1 intersect once.
    CHECK_FALSE(lagrangian_check({{1, 0, 0, 0}, {0.01, 0, 1, 0}}, J2));
    CHECK_FALSE(lagrangian_check({{1, 0, 0, 0}, {0, 1, 0.2, 0}}, J2));
    try {
        lagrangian_check({{1, 0, 0, 0}}, J2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongDimension);
    }
}

TEST_CASE("torus deviation is bounded at the first level")
{
    auto r = deviation_experiment(deep_sample("0", 1), 1e300, deep_fit());
    REQUIRE(r.levels.size() == 1);
    CHECK(r.bounded_at_genus);
    CHECK(lagrangian_check(r.flag, standard_symplectic_form(1)));
    DeviationOptions orbit;
    orbit.times = DeviationTimes::Orbit;
    CHECK(deviation_experiment(sample_random(Stratum::parse("0"), 2), 1e5, orbit).bounded_at_genus);
}

TEST_CASE("deviation slopes match the cocycle in H(2) and H(1,1)")
{
    for (const char* st : {"2", "1,1"}) {
        const double nu2 = cocycle_exponents(Stratum::parse(st), 9, steps(1000000)).values[1];
        auto r = deviation_experiment(deep_sample(st, 3), 1e300, deep_fit());
        REQUIRE(r.levels.size() == 2);
        CHECK(std::abs(r.levels[0].slope - nu2) <= 0.05);
        CHECK(r.levels[1].slope <= 0.05);
        CHECK(r.levels[0].slope >= r.levels[1].slope);
        CHECK(r.bounded_at_genus);
        CHECK(lagrangian_check(r.flag, standard_symplectic_form(2)));
        // The flag is orthonormal.
        double d = 0;
        for (int i = 0; i < 4; ++i) d += r.flag[0][i] * r.flag[1][i];
        CHECK(std::abs(d) < 1e-9);
    }
}

TEST_CASE("orbit checkpoints give an ordered flag")
{
    DeviationOptions orbit;
    orbit.times = DeviationTimes::Orbit;
    auto r = deviation_experiment(sample_random(Stratum::parse("2"), 4), 1e6, orbit);
    REQUIRE(r.levels.size() == 2);
    CHECK(r.levels[0].slope > r.levels[1].slope);
    CHECK(r.bounded_at_genus);
    CHECK_THROWS_AS(deviation_experiment(sample_random(Stratum::parse("2"), 4), 100, orbit), Error);
}
