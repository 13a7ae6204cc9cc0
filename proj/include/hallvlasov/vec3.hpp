#pragma once

#include <array>
#include <cmath>

namespace hv {

using Vec3 = std::array<double, 3>;

inline constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline constexpr Vec3 operator/(const Vec3& a, double s) { return {a[0] / s, a[1] / s, a[2] / s}; }

inline constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// a ∧ b
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Row-major 3x3 matrix.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Vec3 apply(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2], m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

/// Rodrigues rotation matrix for a right-handed rotation by `angle` about the
/// unit vector `axis`.
inline Mat3 rotation_matrix(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis[0], y = axis[1], z = axis[2];
  return {{{c + x * x * t, x * y * t - z * s, x * z * t + y * s},
           {y * x * t + z * s, c + y * y * t, y * z * t - x * s},
           {z * x * t - y * s, z * y * t + x * s, c + z * z * t}}};
}

/// Applies the rotation by `angle` about `axis` (any length; a zero axis or
/// zero angle is the identity).
inline Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  const double len = norm(axis);
  if (len == 0.0 || angle == 0.0) return v;
  const Vec3 n = axis / len;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return c * v + s * cross(n, v) + ((1.0 - c) * dot(n, v)) * n;
}

}  // namespace hv
