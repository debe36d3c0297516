#pragma once

#include "flatlab/permutation.hpp"
#include "flatlab/surface.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace flatlab {

struct SuspensionData {
    Permutation perm;
    std::vector<Rational> lambda;  // indexed by label
    std::vector<Rational> tau;     // indexed by label
};

// Top prefix sums of tau positive and bottom prefix sums negative.
bool valid_suspension(const Permutation& p, const std::vector<Rational>& tau);

// Polygon with top line zeta_top[0..] and bottom line zeta_bottom[0..],
// zeta = (lambda, tau). Throws when the polygon is not embedded.
TranslationSurface suspension_surface(const SuspensionData& d, Backend backend = Backend::Exact);

// Standard suspension: lambda = 1, tau = bottom position - top position.
SuspensionData standard_suspension(const Permutation& p);

struct SampleOptions {
    long max_attempts = 1000000;
    // Optional component tag: "hyperelliptic", "even", "odd", "nonhyperelliptic".
    std::string component;
    // Random rotation followed by diag(2^k, 2^-k) applied after sampling, so
    // the output is pushed toward the flow-invariant measure.
    int teichmuller_doublings = 0;
    Backend backend = Backend::Exact;
    // Bits of the dyadic grid for lambda and tau; above 30 the coarse values
    // receive random low-order bits (deep Rauzy induction needs long expansions).
    int precision_bits = 30;
};

// Deterministic permutation whose suspensions land in the stratum (and component).
Permutation stratum_permutation(const Stratum& s, const std::string& component = "");

struct Sample {
    TranslationSurface surface;
    SuspensionData data;
    long attempts = 0;
};

Sample sample_random_detailed(const Stratum& s, std::uint64_t seed, const SampleOptions& opt = {});
TranslationSurface sample_random(const Stratum& s, std::uint64_t seed, const SampleOptions& opt = {});

}  // namespace flatlab
