#pragma once

#include "flatlab/intlinalg.hpp"
#include "flatlab/surface.hpp"

#include <vector>

namespace flatlab {

// Direction at a cone point: angle 2 pi * sheet + arg(dir), arg in [0, 2 pi).
struct ConeAngle {
    int vertex = -1;
    int sheet = 0;
    Vec2 dir;
};

// Sheet of direction d issued from corner c (d must lie in the corner sector).
int cone_sheet(const Triangulation& t, Corner c, const Vec2& d);
// Position shifted by +pi (or -pi when sign < 0).
ConeAngle rotate_half_turn(const Triangulation& t, const ConeAngle& a, int sign = 1);
bool same_angle(const ConeAngle& a, const ConeAngle& b);
// ccw angle from a to b lies strictly inside (0, pi).
bool within_half_turn(const Triangulation& t, const ConeAngle& a, const ConeAngle& b);

struct SaddleConnection {
    int start = -1;
    int end = -1;
    Vec2 holonomy;          // raw units
    double length = 0;      // physical length
    Corner start_corner;    // corner of the first triangle crossed
    Corner end_corner;      // corner of the last triangle crossed
    int start_sheet = 0;    // sheet of holonomy at start
    int end_sheet = 0;      // sheet of -holonomy at end

    ConeAngle outgoing() const { return {start, start_sheet, holonomy}; }
    ConeAngle incoming() const { return {end, end_sheet, -holonomy}; }
    bool closed() const { return start == end; }
};

struct CountOptions {
    long budget = 200000000;   // wedge steps per search
};

// All oriented saddle connections of physical length <= sqrt(length_sq).
std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, const Rational& length_sq,
                                                 const CountOptions& opt = {});
std::vector<SaddleConnection> saddle_connections(const TranslationSurface& s, double length,
                                                 const CountOptions& opt = {});

// Edge chain of the connection (relative to the cone points), obtained by
// retracing the segment through the triangulation.
IntVec saddle_chain(const TranslationSurface& s, const SaddleConnection& sc);

// Relative homology H_1(S, cone points) as edge chains modulo triangle
// boundaries, in a canonical reduced form.
class RelativeHomology {
public:
    explicit RelativeHomology(const Triangulation& t);
    IntVec reduce(IntVec chain) const;
    int rank() const { return rank_; }

private:
    std::vector<IntVec> rows_;
    std::vector<int> pivots_;
    int rank_ = 0;
};

// Connections grouped by exact holonomy and relative homology class.
std::vector<std::vector<SaddleConnection>> homologous_groups(const TranslationSurface& s, double length,
                                                             const CountOptions& opt = {});
std::vector<std::vector<SaddleConnection>> homologous_groups(const TranslationSurface& s,
                                                             const std::vector<SaddleConnection>& list);

}  // namespace flatlab
