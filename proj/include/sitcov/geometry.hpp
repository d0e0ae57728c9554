#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace sitcov {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// wrap an angle to (-pi, pi]
inline double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm_xy() const { return std::hypot(x, y); }
  Vec3 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
  }
  // planar (x,y) part rescaled to unit length, z dropped
  Vec3 horizontal_unit() const {
    double n = norm_xy();
    return n > 0.0 ? Vec3{x / n, y / n, 0.0} : Vec3{};
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Vec2 {
  double x = 0.0, y = 0.0;
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  double norm() const { return std::hypot(x, y); }
  bool operator==(const Vec2& o) const = default;
};

// A thin wall: a vertical rectangle spanning segment a-b from z=0 to z=height.
struct WallSegment {
  Vec2 a, b;
  double height = 3.0;
};

// Axis-aligned solid box.
struct BoxPrism {
  Vec2 center;
  double half_x = 0.0, half_y = 0.0;
  double z0 = 0.0, z1 = 0.0;
};

// Solid vertical cylinder standing on the floor.
struct Cylinder {
  Vec2 center;
  double radius = 0.0;
  double height = 0.0;
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// distance from point p to segment a-b, all in the xy plane
inline double point_segment_distance_xy(double px, double py, const Vec2& a,
                                        const Vec2& b) {
  double abx = b.x - a.x, aby = b.y - a.y;
  double apx = px - a.x, apy = py - a.y;
  double len2 = abx * abx + aby * aby;
  double t = len2 > 0.0 ? clamp01((apx * abx + apy * aby) / len2) : 0.0;
  double cx = a.x + t * abx, cy = a.y + t * aby;
  return std::hypot(px - cx, py - cy);
}

// distance from z to the interval [z0, z1]
inline double interval_distance(double z, double z0, double z1) {
  if (z < z0) return z0 - z;
  if (z > z1) return z - z1;
  return 0.0;
}

// distance from a 3D point to the wall rectangle (segment x [0,height])
inline double distance_to_wall(const Vec3& p, const WallSegment& w) {
  double d_xy = point_segment_distance_xy(p.x, p.y, w.a, w.b);
  double d_z = interval_distance(p.z, 0.0, w.height);
  return std::hypot(d_xy, d_z);
}

// distance from a 3D point to the solid box (0 inside)
inline double distance_to_box(const Vec3& p, const BoxPrism& b) {
  double dx = std::max({b.center.x - b.half_x - p.x, 0.0, p.x - (b.center.x + b.half_x)});
  double dy = std::max({b.center.y - b.half_y - p.y, 0.0, p.y - (b.center.y + b.half_y)});
  double dz = std::max({b.z0 - p.z, 0.0, p.z - b.z1});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// distance from a 3D point to the solid cylinder (0 inside)
inline double distance_to_cylinder(const Vec3& p, const Cylinder& c) {
  double d_xy = std::max(0.0, std::hypot(p.x - c.center.x, p.y - c.center.y) - c.radius);
  double d_z = interval_distance(p.z, 0.0, c.height);
  return std::hypot(d_xy, d_z);
}

// Horizontal ray cast in the xy plane at height z.
// Returns the parametric distance along (dx,dy) to the nearest intersection,
// or nullopt if there is none.

inline std::optional<double> ray_segment_xy(double ox, double oy, double dx,
                                            double dy, const Vec2& a,
                                            const Vec2& b) {
  // solve o + t*d = a + u*(b-a), t >= 0, u in [0,1]
  double ex = b.x - a.x, ey = b.y - a.y;
  double denom = dx * ey - dy * ex;
  if (std::abs(denom) < 1e-12) return std::nullopt;  // parallel
  double qx = a.x - ox, qy = a.y - oy;
  double t = (qx * ey - qy * ex) / denom;
  double u = (qx * dy - qy * dx) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

inline std::optional<double> ray_wall(const Vec3& origin, double dx, double dy,
                                      const WallSegment& w) {
  if (origin.z < 0.0 || origin.z > w.height) return std::nullopt;
  return ray_segment_xy(origin.x, origin.y, dx, dy, w.a, w.b);
}

// 2D slab test against the box footprint; the ray plane must cut the z-extent.
inline std::optional<double> ray_box(const Vec3& origin, double dx, double dy,
                                     const BoxPrism& b) {
  if (origin.z < b.z0 || origin.z > b.z1) return std::nullopt;
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  double lo[2] = {b.center.x - b.half_x, b.center.y - b.half_y};
  double hi[2] = {b.center.x + b.half_x, b.center.y + b.half_y};
  double o[2] = {origin.x, origin.y};
  double d[2] = {dx, dy};
  for (int i = 0; i < 2; ++i) {
    if (std::abs(d[i]) < 1e-12) {
      if (o[i] < lo[i] || o[i] > hi[i]) return std::nullopt;
    } else {
      double t1 = (lo[i] - o[i]) / d[i];
      double t2 = (hi[i] - o[i]) / d[i];
      if (t1 > t2) std::swap(t1, t2);
      tmin = std::max(tmin, t1);
      tmax = std::min(tmax, t2);
      if (tmin > tmax) return std::nullopt;
    }
  }
  return tmin;
}

inline std::optional<double> ray_cylinder(const Vec3& origin, double dx,
                                          double dy, const Cylinder& c) {
  if (origin.z < 0.0 || origin.z > c.height) return std::nullopt;
  double fx = origin.x - c.center.x, fy = origin.y - c.center.y;
  double a = dx * dx + dy * dy;
  double bq = 2.0 * (fx * dx + fy * dy);
  double cq = fx * fx + fy * fy - c.radius * c.radius;
  if (cq <= 0.0) return 0.0;  // inside
  double disc = bq * bq - 4.0 * a * cq;
  if (disc < 0.0 || a < 1e-12) return std::nullopt;
  double t = (-bq - std::sqrt(disc)) / (2.0 * a);
  if (t < 0.0) return std::nullopt;
  return t;
}

}  // namespace sitcov
