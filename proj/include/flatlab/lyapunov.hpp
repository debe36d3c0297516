#pragma once

#include "flatlab/homology.hpp"
#include "flatlab/iet.hpp"
#include "flatlab/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flatlab {

// Action of one accelerated step with matrix B (lengths_old = B lengths_new).
enum class CocycleConvention {
    Direct,             // cycles: v -> B^T v
    InverseTranspose,   // lengths: v -> B^{-1} v
};

struct ExponentOptions {
    long steps = 1000000;
    int orthonormalize_every = 1;
    int blocks = 20;                // batches for the standard errors
    CocycleConvention convention = CocycleConvention::Direct;
    bool time_normalized = false;   // top rate per unit of sum t0 instead of per step
    double max_std_error = 0;       // > 0: NonConvergence when exceeded
    double tie_tol = 1e-12;
};

struct ExponentEstimate {
    std::vector<double> values;       // nu_1 = 1 >= nu_2 >= ... >= nu_g
    std::vector<double> std_errors;
    std::vector<double> spectrum;     // all n exponents over the top one, descending
    long steps = 0;
    double teich_time = 0;            // sum of t0 over the run
    double top_rate = 0;              // top exponent per step, or per unit time when normalized
};

// Exponents of the Zorich cocycle along the orbit of an IET with double lengths.
ExponentEstimate cocycle_exponents(const IetD& start, std::uint64_t seed, const ExponentOptions& opt = {});
// Random lengths on the simplex for a fixed permutation.
ExponentEstimate cocycle_exponents(const Permutation& p, std::uint64_t seed, const ExponentOptions& opt = {});
// Permutation of the stratum (component) with random lengths.
ExponentEstimate cocycle_exponents(const Stratum& stratum, std::uint64_t seed, const ExponentOptions& opt = {},
                                   const std::string& component = "");
// First-return IET of the surface, lengths slightly jittered so the double
// orbit does not end on the rational grid.
ExponentEstimate cocycle_exponents(const TranslationSurface& s, std::uint64_t seed, const ExponentOptions& opt = {});

struct DeviationLevel {
    int dimension = 0;
    double slope = 0;          // regression of log dist(c_N, L_j) on log N
    double slope_error = 0;    // standard error of the slope
    bool degenerate = false;   // too few positive distances for a fit
};

struct DeviationReport {
    int genus = 0;
    double log_n_max = 0;                    // largest log N reached
    long points = 0;                         // sums c_N entering the fits
    std::vector<std::vector<double>> flag;   // orthonormal basis u_1..u_g, L_j = span(u_1..u_j)
    std::vector<DeviationLevel> levels;      // levels[j-1] describes L_j
    bool bounded_at_genus = false;           // slope at level g <= bound
};

enum class DeviationTimes {
    // c_N over return times of the Rauzy-Zorich induced intervals: each
    // induced loop is the ergodic sum over its height, N reaches e^1000 on
    // high precision surfaces, and distances are exact.
    ReturnTimes,
    // c_N along one orbit at log-spaced checkpoints N <= n_max.
    Orbit,
};

struct DeviationOptions {
    DeviationTimes times = DeviationTimes::ReturnTimes;
    double n_min = 64;             // smallest N used in the fits
    double fit_fraction = 0.85;    // ReturnTimes: fit log N <= fit_fraction * log N_max
    double log_n_max = 0;          // ReturnTimes: when positive, replaces log(n_max)
    int bins = 24;                 // envelope bins in log N
    double bounded_slope = 0.05;
    std::optional<Rational> start; // Orbit: default generic_point
};

DeviationReport deviation_experiment(const CycleModel& m, double n_max, const DeviationOptions& opt = {});
DeviationReport deviation_experiment(const TranslationSurface& s, double n_max, const DeviationOptions& opt = {});

// Standard symplectic form on coordinates a_1..a_g, b_1..b_g.
std::vector<std::vector<double>> standard_symplectic_form(int genus);
// True when the normalized basis vectors pairwise pair to zero within tol.
bool lagrangian_check(const std::vector<std::vector<double>>& basis, const std::vector<std::vector<double>>& form,
                      double tol = 1e-3);

}  // namespace flatlab
