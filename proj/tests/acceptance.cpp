// Acceptance campaign: one PASS/FAIL line per criterion.
// Usage: acceptance [--only 1,4,10]

#include "fixtures.hpp"

#include "flatlab/classify.hpp"
#include "flatlab/homology.hpp"
#include "flatlab/lyapunov.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/siegel_veech.hpp"
#include "flatlab/zippered.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace flatlab;

namespace {

const double kInvZeta2 = 6 / (std::numbers::pi * std::numbers::pi);

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... T>
std::string fmt(const char* f, T... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. Cylinders of the unit square torus against primitive lattice points.
Outcome torus_constant()
{
    const long L = 200;
    long primitive = 0;
    for (long a = -L; a <= L; ++a)
        for (long b = -L; b <= L; ++b)
            if (a * a + b * b <= L * L && std::gcd(a, b) == 1) ++primitive;
    const long n = static_cast<long>(cylinders(fixtures::square_torus(), static_cast<double>(L)).size());
    const double ratio = n / (std::numbers::pi * L * L);
    const double target = 0.5 * kInvZeta2;
    const double rel = std::abs(ratio - target) / target;
    return {2 * n == primitive && rel <= 0.02,
            fmt("N_cyl(200)=%ld, primitive/2=%ld, ratio %.5f vs %.5f (rel %.4f, tol 0.02)", n, primitive / 2, ratio,
                target, rel)};
}

// 2 and 3. Monte Carlo Siegel-Veech constants of principal strata.
Outcome sv_campaign(const char* stratum, int k, double target, double tol)
{
    const int samples = 200;
    auto e = siegel_veech_estimate(Stratum::parse(stratum), k, 30.0, samples, 20240601);
    const double rel = std::abs(e.mean - target) / target;
    return {rel <= tol && e.anomalies == 0,
            fmt("H(%s) k=%d: %.4f +- %.4f over %d surfaces vs %.4f (rel %.3f, tol %.2f), anomalies %ld", stratum, k,
                e.mean, e.std_error, samples, target, rel, tol, e.anomalies)};
}

IetQ random_exact_iet(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> size(2, 7);
    for (;;) {
        const int n = size(rng);
        std::vector<int> top(n), bottom(n);
        std::iota(top.begin(), top.end(), 0);
        std::iota(bottom.begin(), bottom.end(), 0);
        std::shuffle(bottom.begin(), bottom.end(), rng);
        Permutation p(top, bottom);
        if (!p.irreducible()) continue;
        std::vector<Rational> len;
        for (int a = 0; a < n; ++a) {
            BigInt num = 1;
            for (int w = 0; w < 4; ++w) num = (num << 32) + BigInt(static_cast<unsigned long>(rng() >> 32));
            len.push_back(Rational(num));
        }
        return IetQ(p, len);
    }
}

// Visits per label of T along the orbit of x until it re-enters [0, cut).
std::vector<long> visits_until_return(const IetQ& T, Rational x, const Rational& cut)
{
    std::vector<long> v(T.size(), 0);
    for (int guard = 0; guard < 1000000; ++guard) {
        ++v[T.label_at(x)];
        x = T.map(x);
        if (x < cut) return v;
    }
    throw Error(ErrorCode::NonConvergence, "acceptance", "orbit did not return");
}

// 4. Length and cycle relations of single Rauzy steps, exactly.
Outcome rauzy_duality()
{
    std::mt19937_64 rng(4);
    long checks = 0, bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        IetQ T = random_exact_iet(rng);
        for (int step = 0; step < 50; ++step) {
            auto r = rauzy_step(T);
            const int n = T.size();
            for (int j = 0; j < n; ++j) {
                Rational s = 0;
                for (int k = 0; k < n; ++k) s += Rational(r.A(j, k)) * r.next.length(k);
                bad += s != T.length(j);
                ++checks;
            }
            // The first return loop of X'_k passes A_jk times through X_j.
            for (int k = 0; k < n; ++k) {
                auto v = visits_until_return(T, r.next.domain_start(k) + r.next.length(k) / 3, r.next.total());
                for (int j = 0; j < n; ++j) bad += BigInt(v[j]) != r.A(j, k);
                ++checks;
            }
            T = r.next;
        }
    }
    // Homology classes on surfaces: intersections with the original loops.
    long hom = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto S = sample_random(Stratum::parse(seed % 2 ? "1,1" : "2"), seed);
        Transversal X = canonical_transversal(S);
        CycleModel m(S, X);
        IetQ T = m.first_return().iet;
        std::vector<IntVec> classes = m.chains();
        for (int step = 0; step < 50; ++step) {
            auto r = rauzy_step(T);
            Transversal Y{X.start, r.next.total()};
            CycleModel m2(S, Y);
            const IetQ& U = m2.first_return().iet;
            std::vector<IntVec> next(T.size());
            for (int pos = 0; pos < U.size(); ++pos) {
                const int lab_new = U.perm().top[pos], lab = r.next.perm().top[pos];
                IntVec want(m.size(), 0), got = m.intersections(m2.chains()[lab_new]);
                for (int j = 0; j < T.size(); ++j) {
                    IntVec cj = m.intersections(classes[j]);
                    for (int i = 0; i < m.size(); ++i) want[i] += r.A(j, lab) * cj[i];
                }
                bad += got != want;
                ++hom;
                next[lab] = m2.chains()[lab_new];
            }
            classes = next;
            T = r.next;
            X = Y;
        }
    }
    return {bad == 0, fmt("%ld IET relations and %ld surface cycle relations checked, %ld mismatches", checks, hom, bad)};
}

// 5. Asymptotic cycle against the dual of Re(omega).
Outcome asymptotic_cycle_check()
{
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto S = sample_random(Stratum::parse("2"), seed);
        CycleModel m(S, canonical_transversal(S));
        auto a = asymptotic_cycle(m, 1000000);
        auto d = dual_of_re_omega(m);
        double num = 0, den = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            const double di = to_double(d[i]);
            num += (a[i] - di) * (a[i] - di);
            den += di * di;
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return {worst <= 1e-2, fmt("worst relative error over 10 H(2) surfaces at N=1e6: %.2e (tol 1e-2)", worst)};
}

// 6. Deviation slopes against cocycle exponents.
Outcome deviation_cross_check()
{
    bool ok = true;
    std::ostringstream out;
    for (const char* st : {"2", "1,1"}) {
        ExponentOptions eo;
        eo.steps = 1000000;
        const double nu2 = cocycle_exponents(Stratum::parse(st), 100, eo).values[1];
        out << "H(" << st << ") nu2=" << fmt("%.4f", nu2) << " slopes";
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SampleOptions so;
            so.precision_bits = 3500;
            DeviationOptions dopt;
            dopt.log_n_max = 2000;
            auto r = deviation_experiment(sample_random(Stratum::parse(st), seed, so), 1e300, dopt);
            const double s1 = r.levels[0].slope, sg = r.levels.back().slope;
            const bool lag = lagrangian_check(r.flag, standard_symplectic_form(r.genus));
            ok = ok && std::abs(s1 - nu2) <= 0.05 && sg <= 0.05 && lag;
            out << fmt(" (%.3f, L_g %.3f%s)", s1, sg, lag ? "" : " not Lagrangian");
        }
        out << "; ";
    }
    return {ok, out.str() + "tol 0.05"};
}

// 7. Ordering of the exponents in genus three.
Outcome spectrum_ordering()
{
    ExponentOptions eo;
    eo.steps = 1000000;
    auto e = cocycle_exponents(Stratum::parse("1,1,1,1"), 7, eo);
    const double n2 = e.values[1], s2 = e.std_errors[1], n3 = e.values[2], s3 = e.std_errors[2];
    const bool ok = 1 > n2 + 2 * s2 && n2 - 2 * s2 > n3 + 2 * s3 && n3 - 2 * s3 > 0;
    return {ok, fmt("H(1,1,1,1): 1 > %.4f(+-%.4f) > %.4f(+-%.4f) > 0 at 1e6 steps", n2, 2 * s2, n3, 2 * s3)};
}

bool same_direction(const Vec2& a, const Vec2& b) { return cross(a, b) == 0 && dot(a, b) > 0; }

// 8. Parallel connections between the two zeros of H(1,1).
Outcome homologous_pairs()
{
    long pairs = 0, unequal = 0, class_mismatch = 0;
    std::vector<long> per(50, 0), per_unequal(50, 0), per_mismatch(50, 0);
    parallel_for(50, worker_count(0), [&](long i) {
        auto S = sample_random(Stratum::parse("1,1"), derive_seed(8, static_cast<std::uint64_t>(i)));
        RelativeHomology rh(S.triangulation());
        std::vector<SaddleConnection> joining;
        for (auto& sc : saddle_connections(S, 20.0))
            if (sc.start == 0 && sc.end == 1) joining.push_back(sc);
        for (size_t a = 0; a < joining.size(); ++a)
            for (size_t b = a + 1; b < joining.size(); ++b) {
                if (!same_direction(joining[a].holonomy, joining[b].holonomy)) continue;
                if (joining[a].holonomy != joining[b].holonomy) {
                    ++per_unequal[i];
                    continue;
                }
                ++per[i];
                if (rh.reduce(saddle_chain(S, joining[a])) != rh.reduce(saddle_chain(S, joining[b]))) ++per_mismatch[i];
            }
    });
    for (int i = 0; i < 50; ++i) {
        pairs += per[i];
        unequal += per_unequal[i];
        class_mismatch += per_mismatch[i];
    }
    return {pairs > 0 && unequal == 0 && class_mismatch == 0,
            fmt("50 H(1,1) surfaces at L=20: %ld parallel P1->P2 pairs, %ld with unequal holonomy, %ld with different "
                "relative class",
                pairs, unequal, class_mismatch)};
}

// 9. Spin parity under base changes and deformations; labels in the list.
Outcome spin_invariance()
{
    long surfaces = 0, bad = 0, deformed = 0;
    for (const char* st : {"4", "2,2"})
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const char* comp = seed % 2 ? "odd" : "hyperelliptic";
            SampleOptions so;
            so.component = comp;
            auto det = sample_random_detailed(Stratum::parse(st), seed, so);
            auto other = sample_random_detailed(Stratum::parse(st), seed + 1000, so);
            auto rep = spin_report(det.surface, 10, seed);
            for (int p : rep.per_basis) bad += p != (rep.parity == Parity::Odd ? 1 : 0);
            // Both hyperelliptic components of genus three have even parity.
            bad += rep.parity != (std::string(comp) == "odd" ? Parity::Odd : Parity::Even);
            for (int step = 1; step <= 10; ++step) {
                Rational w = frac(step, 10);
                SuspensionData d = det.data;
                for (size_t a = 0; a < d.lambda.size(); ++a) {
                    d.lambda[a] = (1 - w) * det.data.lambda[a] + w * other.data.lambda[a];
                    d.tau[a] = (1 - w) * det.data.tau[a] + w * other.data.tau[a];
                }
                try {
                    bad += spin_parity(suspension_surface(d)) != rep.parity;
                    ++deformed;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::SelfIntersectingBoundary) throw;
                }
            }
            ++surfaces;
        }
    long labels = 0, outside = 0;
    for (const char* st : {"0", "2", "1,1", "4", "3,1", "2,2", "2,1,1", "1,1,1,1"})
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto S = sample_random(Stratum::parse(st), seed);
            auto tags = allowed_tags(S.stratum());
            outside += std::find(tags.begin(), tags.end(), component_label(S).tag) == tags.end();
            ++labels;
        }
    return {bad == 0 && outside == 0,
            fmt("%ld surfaces x 11 bases, %ld deformed surfaces: %ld parity changes; %ld labels, %ld outside the list",
                surfaces, deformed, bad, labels, outside)};
}

ZipperedRectangles unit_base(ZipperedRectangles z)
{
    Rational b = z.base();
    for (auto& l : z.lambda) l /= b;
    for (auto& t : z.tau) t *= b;
    return z;
}

// 10. Rearrangement and diag(e^t0, e^-t0) restore the unit base.
Outcome return_time()
{
    const char* strata[] = {"0", "2", "1,1", "4", "2,2", "3,1", "1,1,1,1"};
    long bad = 0;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        auto S = sample_random(Stratum::parse(strata[i % 7]), 1000 + static_cast<std::uint64_t>(i));
        ZipperedRectangles Z = unit_base(to_zippered_rectangles(S));
        const Rational m = std::min(Z.lambda[Z.perm.top.back()], Z.lambda[Z.perm.bottom.back()]);
        auto t = teich_return_time(Z);
        worst = std::max(worst, std::abs(t.t0 + std::log(1 - to_double(m))));
        ZipperedRectangles next = renormalize(Z, t);
        bad += t.shrink != m || t.exp_t0 * (1 - m) != 1 || next.base() != 1 || next.area() != Z.area();
    }
    return {bad == 0 && worst < 1e-12,
            fmt("100 zippered rectangles: %ld inexact restorations, |t0 + log(1 - m)| <= %.1e", bad, worst)};
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    for (int a = 1; a + 1 < argc; ++a)
        if (std::string(argv[a]) == "--only") {
            std::stringstream ss(argv[a + 1]);
            for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
        }
    const std::vector<std::function<Outcome()>> criteria = {
        torus_constant,
        [] { return sv_campaign("1,1", 1, 2.5 * kInvZeta2, 0.15); },
        [] { return sv_campaign("1,1,1,1", 2, 3.0 / 14 * kInvZeta2, 0.40); },
        rauzy_duality,
        asymptotic_cycle_check,
        deviation_cross_check,
        spectrum_ordering,
        homologous_pairs,
        spin_invariance,
        return_time,
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), dt);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
