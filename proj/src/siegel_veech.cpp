#include "flatlab/siegel_veech.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace flatlab {

namespace {

Vec2d physical(const TranslationSurface& s, const Vec2& v)
{
    const double f = std::sqrt(to_double(s.length_scale_sq()));
    Vec2d d = to_double(v);
    return {d.x * f, d.y * f};
}

}  // namespace

std::vector<Vec2d> holonomy_set(const TranslationSurface& s, double radius, Configuration type, int k,
                                const CountOptions& opt)
{
    std::vector<Vec2d> out;
    auto list = saddle_connections(s, radius, opt);
    if (type == Configuration::SaddleConnections) {
        for (const auto& sc : list) out.push_back(physical(s, sc.holonomy));
        return out;
    }
    auto cyl = cylinders_from(s, list, opt);
    if (type == Configuration::Cylinders) {
        for (const auto& c : cyl) out.push_back(physical(s, c.holonomy));
        return out;
    }
    for (const auto& fam : cylinder_families(cyl))
        if (static_cast<int>(fam.size()) == k) out.push_back(physical(s, fam.front().holonomy));
    return out;
}

double siegel_veech_transform(const std::function<double(const Vec2d&)>& f, double support_radius,
                              const TranslationSurface& s, Configuration type, int k, const CountOptions& opt)
{
    double sum = 0;
    for (const Vec2d& v : holonomy_set(s, support_radius, type, k, opt)) sum += f(v);
    return sum;
}

std::vector<ConfigurationCount> configuration_counts(const TranslationSurface& s, double L, const CountOptions& opt)
{
    std::map<int, long> count;
    for (const auto& fam : cylinder_families(cylinders(s, L, opt))) ++count[static_cast<int>(fam.size())];
    std::vector<ConfigurationCount> out;
    const double disc = std::numbers::pi * L * L;
    for (const auto& [k, n] : count) out.push_back({k, n, n / disc});
    return out;
}

SiegelVeechEstimate siegel_veech_estimate(const Stratum& stratum, int k, double L, int samples,
                                          std::uint64_t seed, const EstimateOptions& opt)
{
    if (samples <= 0) throw Error(ErrorCode::ConfigError, "geodesic-count", "sample count must be positive");
    const int g = stratum.genus();
    const int max_k = std::max(1, g - 1);
    std::vector<double> values(samples, 0.0);
    std::vector<char> anomaly(samples, 0);
    parallel_for(samples, worker_count(opt.jobs), [&](long i) {
        TranslationSurface s = sample_random(stratum, derive_seed(seed, static_cast<std::uint64_t>(i)), opt.sampling);
        long n = 0;
        for (const ConfigurationCount& c : configuration_counts(s, L, opt.counting)) {
            if (c.multiplicity == k) n = c.count;
            if (c.multiplicity > max_k) anomaly[i] = 1;
        }
        values[i] = n / (std::numbers::pi * L * L);
    });
    SiegelVeechEstimate e;
    e.samples = samples;
    e.values = values;
    double sum = 0, sq = 0;
    for (double v : values) sum += v;
    e.mean = sum / samples;
    for (double v : values) sq += (v - e.mean) * (v - e.mean);
    e.std_error = samples > 1 ? std::sqrt(sq / (samples - 1) / samples) : 0.0;
    for (char a : anomaly) e.anomalies += a;
    return e;
}

double tabulated_cyl_constant(int genus, int k)
{
    static const std::map<std::pair<int, int>, double> table = {
        {{1, 1}, 1.0 / 2}, {{2, 1}, 5.0 / 2}, {{3, 1}, 36.0 / 7}, {{3, 2}, 3.0 / 14},
        {{4, 1}, 3150.0 / 377}, {{4, 2}, 90.0 / 377}, {{4, 3}, 5.0 / 754},
    };
    auto it = table.find({genus, k});
    return it == table.end() ? 0.0 : it->second;
}

}  // namespace flatlab
