#pragma once

#include "flatlab/surface.hpp"

namespace fixtures {

inline flatlab::Vec2 v(long x, long y) { return {flatlab::Rational(x), flatlab::Rational(y)}; }

inline flatlab::TranslationSurface square_torus(long side = 1)
{
    return flatlab::build_from_polygon({v(side, 0), v(0, side)}, {1, 0});
}

// Octagon-free genus-two example with a single 6 pi cone point.
inline flatlab::TranslationSurface genus_two_example()
{
    return flatlab::build_from_polygon({v(1, 2), v(2, 1), v(1, -1), v(2, -2)}, {3, 2, 1, 0});
}

}  // namespace fixtures
