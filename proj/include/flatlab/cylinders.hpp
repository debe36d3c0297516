#pragma once

#include "flatlab/saddle.hpp"

#include <vector>

namespace flatlab {

// Maximal cylinder. The core holonomy is the representative of +-v with
// y > 0 (or y = 0, x > 0); both boundaries are closed saddle connections
// parallel to it, each having the cylinder on its left.
struct Cylinder {
    Vec2 holonomy;           // raw units
    double circumference = 0;
    double width = 0;        // distance between the boundaries
    Rational area;           // physical area
    SaddleConnection bottom; // holonomy == +holonomy
    SaddleConnection top;    // holonomy == -holonomy
};

// True when the closed connection returns to its start at angle pi on its left.
bool bounds_cylinder_on_left(const Triangulation& t, const SaddleConnection& sc);

std::vector<Cylinder> cylinders(const TranslationSurface& s, double length, const CountOptions& opt = {});
std::vector<Cylinder> cylinders(const TranslationSurface& s, const Rational& length_sq, const CountOptions& opt = {});
// Cylinders whose boundaries appear in an existing enumeration.
std::vector<Cylinder> cylinders_from(const TranslationSurface& s, const std::vector<SaddleConnection>& list,
                                     const CountOptions& opt = {});

// Parallel cylinders with equal core holonomy.
std::vector<std::vector<Cylinder>> cylinder_families(const std::vector<Cylinder>& cyl);

}  // namespace flatlab
