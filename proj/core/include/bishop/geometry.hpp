#pragma once

#include <cmath>

namespace bishop {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Angle of a vector in radians, measured in raster coordinates (y down).
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

/// Integer pixel coordinate. Pixel (x, y) has its centre at (x, y).
struct Pixel {
  int x = 0;
  int y = 0;
  friend bool operator==(Pixel a, Pixel b) = default;
};

}  // namespace bishop
