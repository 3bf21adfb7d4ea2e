#pragma once

#include <algorithm>
#include <cmath>

namespace gsqg {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x1 -= o.x1; x2 -= o.x2; return *this; }
    constexpr Vec2& operator*=(double s) { x1 *= s; x2 *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x1, -a.x2}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr bool operator==(const Vec2& a, const Vec2& b) { return a.x1 == b.x1 && a.x2 == b.x2; }

inline double norm(const Vec2& a) { return std::hypot(a.x1, a.x2); }
constexpr double dot(const Vec2& a, const Vec2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

// y^perp = (y2, -y1)
constexpr Vec2 perp(const Vec2& a) { return {a.x2, -a.x1}; }

// Reflections used for odd extensions.
constexpr Vec2 flip_x1(const Vec2& a) { return {-a.x1, a.x2}; }
constexpr Vec2 flip_x2(const Vec2& a) { return {a.x1, -a.x2}; }

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Vec2& v) { return std::max(std::abs(v.x1), std::abs(v.x2)); }

}  // namespace gsqg
