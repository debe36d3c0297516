#include "flatlab/sampling.hpp"

#include "flatlab/classify.hpp"
#include "flatlab/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

namespace flatlab {

bool valid_suspension(const Permutation& p, const std::vector<Rational>& tau)
{
    int n = p.size();
    Rational s = 0;
    for (int k = 0; k + 1 < n; ++k) {
        s += tau[p.top[k]];
        if (s <= 0) return false;
    }
    s = 0;
    for (int k = 0; k + 1 < n; ++k) {
        s += tau[p.bottom[k]];
        if (s >= 0) return false;
    }
    return true;
}

TranslationSurface suspension_surface(const SuspensionData& d, Backend backend)
{
    const Permutation& p = d.perm;
    if (!p.irreducible())
        throw Error(ErrorCode::NonIrreducible, "core", "permutation " + p.str() + " is reducible");
    if (!valid_suspension(p, d.tau))
        throw Error(ErrorCode::InvalidSurface, "core", "suspension data violates prefix conditions");
    std::vector<Vec2> vectors;
    for (int label : p.top) vectors.emplace_back(d.lambda[label], d.tau[label]);
    return build_from_polygon(vectors, p.one_line(), backend);
}

SuspensionData standard_suspension(const Permutation& p)
{
    SuspensionData d{p, {}, {}};
    for (int a = 0; a < p.size(); ++a) {
        d.lambda.push_back(1);
        d.tau.push_back(p.bottom_pos(a) - p.top_pos(a));
    }
    return d;
}

namespace {

BigInt random_bits(std::mt19937_64& rng, int bits)
{
    BigInt r = 0;
    for (int k = 0; k < bits; k += 64) r = (r << 64) + BigInt(std::to_string(rng()));
    const int excess = (bits + 63) / 64 * 64 - bits;
    return r >> excess;
}

// Standard suspension moved off integer data, so that flows and Delaunay
// cells are generic; the perturbation keeps every prefix sum's sign.
SuspensionData generic_suspension(const Permutation& p)
{
    SuspensionData d = standard_suspension(p);
    std::mt19937_64 rng(0x5eed5eedULL);
    const long grid = 1L << 30;
    std::uniform_int_distribution<long> jitter(1, grid);
    const Rational amp = frac(1, 4 * p.size());
    for (int a = 0; a < p.size(); ++a) {
        d.lambda[a] += amp * frac(jitter(rng), grid);
        d.tau[a] += amp * frac(jitter(rng) - grid / 2, grid);
    }
    return d;
}

bool matches(const Permutation& p, const Stratum& s, const std::string& component)
{
    TranslationSurface surf = suspension_surface(component.empty() ? standard_suspension(p) : generic_suspension(p));
    if (surf.stratum() != s) return false;
    if (component.empty()) return true;
    const std::string tag = component_label(surf).tag;
    return tag == component || tag == component + "-spin";
}

}  // namespace

Permutation stratum_permutation(const Stratum& s, const std::string& component)
{
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, std::string>, Permutation> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({s.degrees, component});
        if (it != cache.end()) return it->second;
    }
    int g = s.genus();
    int n = 2 * g + s.num_zeros() - 1;
    if (n < 2) throw Error(ErrorCode::InvalidStratum, "core", "stratum " + s.name() + " is empty");
    Permutation found;
    bool ok = false;
    if (component == "hyperelliptic") {
        Permutation sym = Permutation::symmetric(n);
        if (matches(sym, s, "")) {
            found = sym;
            ok = true;
        }
    } else {
        std::mt19937_64 rng(0x9a1b2c3dULL + 7919ULL * static_cast<std::uint64_t>(n));
        std::vector<int> bottom(n);
        for (long attempt = 0; attempt < 200000 && !ok; ++attempt) {
            std::iota(bottom.begin(), bottom.end(), 0);
            std::shuffle(bottom.begin(), bottom.end(), rng);
            Permutation p = Permutation::from_bottom(bottom);
            if (!p.irreducible()) continue;
            try {
                if (matches(p, s, component)) {
                    found = p;
                    ok = true;
                }
            } catch (const Error&) {
            }
        }
    }
    if (!ok)
        throw Error(ErrorCode::SamplingExhausted, "core",
                    "no permutation found for " + s.name() + (component.empty() ? "" : " " + component));
    std::lock_guard<std::mutex> lock(mu);
    cache[{s.degrees, component}] = found;
    return found;
}

Sample sample_random_detailed(const Stratum& s, std::uint64_t seed, const SampleOptions& opt)
{
    s.genus();  // parity check
    Permutation p = stratum_permutation(s, opt.component);
    int n = p.size();
    std::mt19937_64 rng(seed);
    const long grid = 1L << 30;
    std::uniform_int_distribution<long> len(1, grid);
    std::uniform_int_distribution<long> height(-grid, grid);
    SuspensionData d{p, std::vector<Rational>(n), std::vector<Rational>(n)};
    for (long attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        for (int a = 0; a < n; ++a) {
            d.lambda[a] = frac(len(rng), grid);
            d.tau[a] = frac(height(rng), grid);
        }
        if (opt.precision_bits > 30) {
            const int extra = opt.precision_bits - 30;
            Rational unit(BigInt(1), BigInt(1) << opt.precision_bits);
            for (int a = 0; a < n; ++a) {
                d.lambda[a] += unit * random_bits(rng, extra);
                d.tau[a] += unit * random_bits(rng, extra);
            }
        }
        if (!valid_suspension(p, d.tau)) continue;
        try {
            TranslationSurface surf = suspension_surface(d, opt.backend);
            if (surf.stratum() != s) continue;
            if (opt.teichmuller_doublings > 0) {
                std::uniform_int_distribution<long> tq(-255, 255);
                Rational t = frac(tq(rng), 256);
                Rational den = 1 + t * t;
                Rational c = (1 - t * t) / den, sn = 2 * t / den;
                surf = apply_gl2(surf, c, -sn, sn, c);
                Rational f = 1;
                for (int k = 0; k < opt.teichmuller_doublings; ++k) f *= 2;
                surf = apply_gl2(surf, f, Rational(0), Rational(0), Rational(1) / f);
            }
            return {normalize_area(surf), d, attempt};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SelfIntersectingBoundary) throw;
        }
    }
    throw Error(ErrorCode::SamplingExhausted, "core",
                "rejection budget exhausted for " + s.name());
}

TranslationSurface sample_random(const Stratum& s, std::uint64_t seed, const SampleOptions& opt)
{
    return sample_random_detailed(s, seed, opt).surface;
}

}  // namespace flatlab
