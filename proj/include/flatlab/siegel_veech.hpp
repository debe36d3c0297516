#pragma once

#include "flatlab/cylinders.hpp"
#include "flatlab/sampling.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace flatlab {

enum class Configuration {
    SaddleConnections,   // every oriented saddle connection
    Cylinders,           // one vector per maximal cylinder
    CylinderFamilies,    // one vector per family of exactly k parallel cylinders
};

// Physical holonomy vectors of the configuration with length <= radius.
std::vector<Vec2d> holonomy_set(const TranslationSurface& s, double radius, Configuration type, int k = 1,
                                const CountOptions& opt = {});

// Sum of f over the holonomy set; f must vanish outside the disc of the
// given support radius.
double siegel_veech_transform(const std::function<double(const Vec2d&)>& f, double support_radius,
                              const TranslationSurface& s, Configuration type = Configuration::Cylinders,
                              int k = 1, const CountOptions& opt = {});

struct ConfigurationCount {
    int multiplicity = 0;
    long count = 0;
    double ratio = 0;   // count / (pi L^2)
};

// Number of k-cylinder families of core length <= L for every k present.
std::vector<ConfigurationCount> configuration_counts(const TranslationSurface& s, double L,
                                                     const CountOptions& opt = {});

struct SiegelVeechEstimate {
    double mean = 0;
    double std_error = 0;
    long samples = 0;
    std::vector<double> values;   // per-sample N_k / (pi L^2)
    long anomalies = 0;           // samples with a family of more than max(1, g - 1) cylinders
};

struct EstimateOptions {
    SampleOptions sampling;
    CountOptions counting;
    int jobs = 0;   // 0: FLATLAB_JOBS or hardware concurrency
};

SiegelVeechEstimate siegel_veech_estimate(const Stratum& stratum, int k, double L, int samples,
                                          std::uint64_t seed, const EstimateOptions& opt = {});

// Reference c_{k cyl} of the principal stratum in genus g, in units of
// 1/zeta(2); 0 when not tabulated.
double tabulated_cyl_constant(int genus, int k);

}  // namespace flatlab
