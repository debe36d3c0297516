#pragma once

#include "flatlab/geometry.hpp"
#include "flatlab/surface.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flatlab {

// Closed piecewise-geodesic loop: segment k is followed by a turn of
// turns[k] radians (signed, ccw positive) into segment k+1 (cyclically).
struct FlatLoop {
    std::vector<Vec2d> segments;
    std::vector<double> turns;
};

// Total turning / 2 pi mod 2. The ambient stratum must have even degrees.
int loop_index(const FlatLoop& loop, const Stratum& ambient);

enum class Parity { Even, Odd };
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct SpinReport {
    Parity parity;
    // Parity recomputed in several symplectic bases (all should agree).
    std::vector<int> per_basis;
};

class CycleModel;

// Rectilinear loop of label j: up the vertical flow, back along X.
FlatLoop first_return_flat_loop(const CycleModel& m, int j);
// Quadratic form ind + 1 mod 2 on a class given by loop coefficients.
int spin_form(const CycleModel& m, const std::vector<int>& loop_form, const std::vector<BigInt>& coeffs);

SpinReport spin_report(const CycleModel& m, const Stratum& ambient, int extra_bases = 3, std::uint64_t seed = 1);
SpinReport spin_report(const TranslationSurface& s, int extra_bases = 3, std::uint64_t seed = 1);
Parity spin_parity(const TranslationSurface& s);

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct HyperellipticReport {
    Verdict verdict = Verdict::Unknown;
    bool swaps_zeros = false;   // meaningful when verdict == Yes and two zeros
    int fixed_points = 0;       // fixed points of the involution found
    std::string certificate;
};

HyperellipticReport is_hyperelliptic(const TranslationSurface& s, long budget = 2000000);

struct ComponentLabel {
    Stratum stratum;
    // hyperelliptic | even-spin | odd-spin | nonhyperelliptic | connected
    std::string tag;
    std::string name() const;
};

ComponentLabel component_label(const TranslationSurface& s);

// Labels permitted by the classification for a stratum of genus <= 3 or any genus.
std::vector<std::string> allowed_tags(const Stratum& s);

}  // namespace flatlab
