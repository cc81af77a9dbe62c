#pragma once

#include <cmath>

namespace rtasim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kKtToFps = 1.68781;   // knots to feet per second, exact by convention
inline constexpr double kGravityFps2 = 32.174;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// East-North-Up triple; feet for positions, feet per second for velocities.
struct Vec3 {
  double e = 0.0;
  double n = 0.0;
  double u = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.e + b.e, a.n + b.n, a.u + b.u}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.e - b.e, a.n - b.n, a.u - b.u}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.e, s * v.n, s * v.u}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }

inline double dot(const Vec3& a, const Vec3& b) { return a.e * b.e + a.n * b.n + a.u * b.u; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double hnorm(const Vec3& v) { return std::hypot(v.e, v.n); }

// Zero vector maps to zero so callers can treat degenerate directions as inactive.
inline Vec3 unit_or_zero(const Vec3& v) {
  double m = norm(v);
  if (m <= 0.0) return {};
  return {v.e / m, v.n / m, v.u / m};
}

// Single shared heading conversion: a heading angle enters E-N trigonometry as
// (E, N) = (cos psi, sin psi).  Every module routes heading math through this
// helper so the angular convention is uniform across the codebase.
inline Vec3 heading_unit(double psi_deg) {
  return {std::cos(deg2rad(psi_deg)), std::sin(deg2rad(psi_deg)), 0.0};
}

// Inverse of heading_unit for a horizontal direction.
inline double heading_of(double e, double n) { return rad2deg(std::atan2(n, e)); }

// Wrap to (-180, 180].
inline double wrap180(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

// Wrap to [0, 360).
inline double wrap360(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  return w;
}

}  // namespace rtasim
