#pragma once

#include "flatlab/first_return.hpp"
#include "flatlab/iet.hpp"
#include "flatlab/surface.hpp"

#include <vector>

namespace flatlab {

// Zippered rectangles over an IET: widths lambda and suspension data tau,
// both indexed by label. Heights and zipper positions are derived from tau.
struct ZipperedRectangles {
    Permutation perm;
    std::vector<Rational> lambda;
    std::vector<Rational> tau;
    Rational length_scale_sq = 1;

    int size() const { return perm.size(); }
    Rational base() const;
    std::vector<Rational> heights() const;
    // Height of the cone point on the left side of top[k], k = 1..n-1; entry 0 is 0.
    std::vector<Rational> zippers() const;
    Rational tau_sum() const;
    Rational area() const;
    Iet<Rational> iet() const { return Iet<Rational>(perm, lambda); }
};

ZipperedRectangles to_zippered_rectangles(const TranslationSurface& s, const Transversal& X);
ZipperedRectangles to_zippered_rectangles(const TranslationSurface& s);
TranslationSurface from_zippered_rectangles(const ZipperedRectangles& z);

struct ZipperedStep {
    ZipperedRectangles next;
    IntMatrix A;
    RauzyType type;
};

// Rauzy rearrangement of the rectangles; lambda = A lambda', h' = A^T h.
ZipperedStep zippered_rauzy_step(const ZipperedRectangles& z);

struct ReturnTime {
    double t0 = 0;
    Rational exp_t0;     // e^{t0} = 1 / (1 - m), exact
    Rational shrink;     // m = min(|X_n|, |X_k|)
};

// Requires base 1. |X_n| is the last interval on top, |X_k| the interval whose
// image is rightmost.
ReturnTime teich_return_time(const ZipperedRectangles& z);

// Rauzy rearrangement followed by diag(e^t0, e^-t0); base returns to 1.
ZipperedRectangles renormalize(const ZipperedRectangles& z, const ReturnTime& t);

}  // namespace flatlab
