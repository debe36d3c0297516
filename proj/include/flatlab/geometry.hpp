#pragma once

#include "flatlab/numeric.hpp"

namespace flatlab {

template <class T>
struct Vec2T {
    T x{};
    T y{};

    Vec2T() = default;
    Vec2T(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}

    Vec2T operator+(const Vec2T& o) const { return {T(x + o.x), T(y + o.y)}; }
    Vec2T operator-(const Vec2T& o) const { return {T(x - o.x), T(y - o.y)}; }
    Vec2T operator-() const { return {T(-x), T(-y)}; }
    Vec2T& operator+=(const Vec2T& o) { x += o.x; y += o.y; return *this; }
    Vec2T& operator-=(const Vec2T& o) { x -= o.x; y -= o.y; return *this; }
    Vec2T operator*(const T& s) const { return {T(x * s), T(y * s)}; }
    bool operator==(const Vec2T& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2T& o) const { return !(*this == o); }
    bool is_zero() const { return x == 0 && y == 0; }
};

using Vec2 = Vec2T<Rational>;
using Vec2d = Vec2T<double>;

template <class T>
T cross(const Vec2T<T>& a, const Vec2T<T>& b) { return T(a.x * b.y - a.y * b.x); }

template <class T>
T dot(const Vec2T<T>& a, const Vec2T<T>& b) { return T(a.x * b.x + a.y * b.y); }

template <class T>
int sgn(const T& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline Vec2d to_double(const Vec2& v) { return {to_double(v.x), to_double(v.y)}; }

// 0 if the ccw angle from u to d lies in [0, pi), 1 if in [pi, 2pi).
template <class T>
int half_from(const Vec2T<T>& u, const Vec2T<T>& d)
{
    T c = cross(u, d);
    if (c > 0) return 0;
    if (c < 0) return 1;
    return dot(u, d) > 0 ? 0 : 1;
}

// Compares ccw angles (in [0, 2pi)) measured from u: returns -1, 0, 1.
template <class T>
int angle_cmp_from(const Vec2T<T>& u, const Vec2T<T>& a, const Vec2T<T>& b)
{
    int ha = half_from(u, a), hb = half_from(u, b);
    if (ha != hb) return ha < hb ? -1 : 1;
    T c = cross(a, b);
    if (c > 0) return -1;
    if (c < 0) return 1;
    return 0;
}

// d lies in the half-open ccw sector [u, w) where the sector is nondegenerate.
template <class T>
bool in_sector(const Vec2T<T>& u, const Vec2T<T>& w, const Vec2T<T>& d)
{
    return angle_cmp_from(u, d, w) < 0;
}

// Same direction (positive multiple).
template <class T>
bool same_direction(const Vec2T<T>& a, const Vec2T<T>& b)
{
    return cross(a, b) == 0 && dot(a, b) > 0;
}

}  // namespace flatlab
