#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtasim/vec.hpp"

namespace rtasim {

// Per-axis admissible velocity command set.
struct ControlBox {
  double e_min_fps = -700.0, e_max_fps = 700.0;
  double n_min_fps = -700.0, n_max_fps = 700.0;
  double u_min_fps = -100.0, u_max_fps = 100.0;

  bool contains(const Vec3& u, double tol = 0.0) const {
    return u.e >= e_min_fps - tol && u.e <= e_max_fps + tol && u.n >= n_min_fps - tol &&
           u.n <= n_max_fps + tol && u.u >= u_min_fps - tol && u.u <= u_max_fps + tol;
  }
  Vec3 clamp(const Vec3& u) const;
  bool well_formed() const {
    return e_min_fps < e_max_fps && n_min_fps < n_max_fps && u_min_fps < u_max_fps;
  }
};

enum class ConstraintKind : std::uint8_t { Collision = 0, GeofenceCircle, GeofenceHalfspace };

// One affine row of the safety condition.  The admissibility test on a
// candidate velocity u is  lf_h + grad . u + gamma * h >= 0,  equivalently
// grad . u >= rhs().
struct BarrierConstraint {
  int id = 0;
  ConstraintKind kind = ConstraintKind::Collision;
  double h_ft = 0.0;      // barrier value at the current state
  Vec3 grad;              // dh/dposition of the controlled aircraft
  double lf_h = 0.0;      // drift from exogenous motion (the lead)
  double gamma = 1.0;     // strengthening gain, 1/s; must be > 0

  double rhs() const { return -(lf_h + gamma * h_ft); }
};

// Keep-in fence over the E-N plane.  Polygons are counterclockwise and
// strictly convex.
struct GeofenceSpec {
  enum class Kind : std::uint8_t { Circle = 0, Rect, Polygon };
  Kind kind = Kind::Circle;
  double center_e_ft = 0.0, center_n_ft = 0.0, radius_ft = 30000.0;
  double e_min_ft = 0.0, e_max_ft = 0.0, n_min_ft = 0.0, n_max_ft = 0.0;
  std::vector<std::pair<double, double>> vertices_ft;

  // Empty when well formed, otherwise one message per problem.
  std::vector<std::string> validate() const;
};

// Largest number of barrier rows a fence may compile to; bounds QP size.
inline constexpr std::size_t kMaxFenceRows = 8;

struct BarrierValue {
  double h_ft = 0.0;
  Vec3 grad;
};

// Three-dimensional separation barrier: h = |wing - lead| - rho_c, gradient
// taken with respect to the wing position.  Throws std::domain_error for
// coincident positions.
BarrierValue collision_h(const Vec3& lead_pos_ft, const Vec3& wing_pos_ft, double rho_c_ft);

// Rows for the fence at the given position.  A circle evaluated exactly at
// its center yields h = radius with a zero gradient (interior, inactive).
std::vector<BarrierConstraint> geofence_constraints(const GeofenceSpec& fence,
                                                    const Vec3& pos_ft, double gamma,
                                                    int first_id = 1);

// True when every barrier value is nonnegative (empty list is safe).
bool in_safe_set(std::span<const BarrierConstraint> rows);

struct RtaConfig {
  bool collision_enabled = true;
  bool geofence_enabled = true;
  double rho_c_ft = 500.0;
  double margin_frac = 0.10;          // enforced radius = rho_c * (1 + margin_frac)
  double gamma_collision = 1.0;
  double gamma_geofence = 1.0;
  ControlBox box;
  double frame_budget_s = std::numeric_limits<double>::infinity();
};

// Compiles the active constraint set for one frame; lead kinematics enter the
// collision row as exogenous drift and the fence rows carry no drift.
std::vector<BarrierConstraint> build_constraints(const RtaConfig& cfg, const Vec3& lead_pos_ft,
                                                 const Vec3& lead_vel_fps,
                                                 const Vec3& wing_pos_ft,
                                                 const GeofenceSpec& fence);

enum class RtaFault : std::uint8_t { None = 0, Infeasible, BadInput, FrameOverrun };

const char* rta_fault_name(RtaFault f);

// Box-face rows are reported with ids kBoxRowIdBase + axis-face index.
inline constexpr int kBoxRowIdBase = 100;

struct FilterResult {
  std::optional<Vec3> u_safe;
  bool intervened = false;
  RtaFault fault = RtaFault::None;
  double min_h_ft = std::numeric_limits<double>::infinity();
  double objective = 0.0;                         // |u_safe - u_des|^2
  std::vector<std::pair<int, double>> active;     // (row id, multiplier), KKT certificate
};

// Nearest admissible velocity to u_des under the barrier rows and the box.
// Exact active-set enumeration over all subsets of at most three rows; the
// first KKT-consistent candidate in ascending-id order is the unique global
// minimizer.  On any fault u_safe is absent; the caller decides the fallback.
FilterResult filter(const Vec3& u_des_fps, std::span<const BarrierConstraint> rows,
                    const ControlBox& box,
                    double frame_budget_s = std::numeric_limits<double>::infinity());

}  // namespace rtasim
