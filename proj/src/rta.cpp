#include "rtasim/rta.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rtasim {

namespace {

constexpr double kTinyGrad = 1e-12;

struct Row {
  Vec3 a;
  double b = 0.0;
  int id = 0;
};

// Solves G x = rhs for k <= 3 by Gaussian elimination with partial pivoting.
// Returns false when G is numerically singular.
bool solve_small(int k, std::array<std::array<double, 3>, 3>& g, std::array<double, 3>& rhs) {
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
    }
    if (std::fabs(g[piv][col]) < 1e-12) return false;
    std::swap(g[piv], g[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < k; ++r) {
      double f = g[r][col] / g[col][col];
      for (int cc = col; cc < k; ++cc) g[r][cc] -= f * g[col][cc];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int col = k - 1; col >= 0; --col) {
    double acc = rhs[col];
    for (int cc = col + 1; cc < k; ++cc) acc -= g[col][cc] * rhs[cc];
    rhs[col] = acc / g[col][col];
  }
  return true;
}

}  // namespace

Vec3 ControlBox::clamp(const Vec3& u) const {
  return {std::min(std::max(u.e, e_min_fps), e_max_fps),
          std::min(std::max(u.n, n_min_fps), n_max_fps),
          std::min(std::max(u.u, u_min_fps), u_max_fps)};
}

std::vector<std::string> GeofenceSpec::validate() const {
  std::vector<std::string> bad;
  switch (kind) {
    case Kind::Circle:
      if (!(radius_ft > 0.0)) bad.push_back("geofence circle radius must be positive");
      if (!std::isfinite(center_e_ft) || !std::isfinite(center_n_ft) || !std::isfinite(radius_ft))
        bad.push_back("geofence circle parameters must be finite");
      break;
    case Kind::Rect:
      if (!(e_min_ft < e_max_ft) || !(n_min_ft < n_max_ft))
        bad.push_back("geofence rect bounds must satisfy min < max");
      break;
    case Kind::Polygon: {
      if (vertices_ft.size() < 3) {
        bad.push_back("geofence polygon needs at least 3 vertices");
        break;
      }
      if (vertices_ft.size() > kMaxFenceRows) {
        bad.push_back("geofence polygon exceeds the supported vertex count");
        break;
      }
      std::size_t m = vertices_ft.size();
      for (std::size_t i = 0; i < m; ++i) {
        auto [xa, ya] = vertices_ft[i];
        auto [xb, yb] = vertices_ft[(i + 1) % m];
        auto [xc, yc] = vertices_ft[(i + 2) % m];
        double cross = (xb - xa) * (yc - yb) - (yb - ya) * (xc - xb);
        if (!(cross > 0.0)) {
          bad.push_back("geofence polygon must be strictly convex counterclockwise");
          break;
        }
        if (xa == xb && ya == yb) {
          bad.push_back("geofence polygon has a repeated vertex");
          break;
        }
      }
      break;
    }
  }
  return bad;
}

BarrierValue collision_h(const Vec3& lead_pos_ft, const Vec3& wing_pos_ft, double rho_c_ft) {
  Vec3 rel = wing_pos_ft - lead_pos_ft;
  double dist = norm(rel);
  if (dist <= 0.0) throw std::domain_error("collision barrier undefined at zero separation");
  return {dist - rho_c_ft, {rel.e / dist, rel.n / dist, rel.u / dist}};
}

std::vector<BarrierConstraint> geofence_constraints(const GeofenceSpec& fence, const Vec3& pos_ft,
                                                    double gamma, int first_id) {
  std::vector<BarrierConstraint> rows;
  auto push = [&rows, gamma, &first_id](ConstraintKind kind, double h, Vec3 grad) {
    BarrierConstraint c;
    c.id = first_id++;
    c.kind = kind;
    c.h_ft = h;
    c.grad = grad;
    c.lf_h = 0.0;
    c.gamma = gamma;
    rows.push_back(c);
  };

  switch (fence.kind) {
    case GeofenceSpec::Kind::Circle: {
      double de = pos_ft.e - fence.center_e_ft;
      double dn = pos_ft.n - fence.center_n_ft;
      double d = std::hypot(de, dn);
      if (d <= 0.0) {
        push(ConstraintKind::GeofenceCircle, fence.radius_ft, {0.0, 0.0, 0.0});
      } else {
        push(ConstraintKind::GeofenceCircle, fence.radius_ft - d, {-de / d, -dn / d, 0.0});
      }
      break;
    }
    case GeofenceSpec::Kind::Rect:
      push(ConstraintKind::GeofenceHalfspace, pos_ft.e - fence.e_min_ft, {1.0, 0.0, 0.0});
      push(ConstraintKind::GeofenceHalfspace, fence.e_max_ft - pos_ft.e, {-1.0, 0.0, 0.0});
      push(ConstraintKind::GeofenceHalfspace, pos_ft.n - fence.n_min_ft, {0.0, 1.0, 0.0});
      push(ConstraintKind::GeofenceHalfspace, fence.n_max_ft - pos_ft.n, {0.0, -1.0, 0.0});
      break;
    case GeofenceSpec::Kind::Polygon: {
      std::size_t m = fence.vertices_ft.size();
      for (std::size_t i = 0; i < m; ++i) {
        auto [xa, ya] = fence.vertices_ft[i];
        auto [xb, yb] = fence.vertices_ft[(i + 1) % m];
        double de = xb - xa;
        double dn = yb - ya;
        double len = std::hypot(de, dn);
        // Inward normal: left of the edge direction for a counterclockwise ring.
        Vec3 nrm{-dn / len, de / len, 0.0};
        double h = nrm.e * (pos_ft.e - xa) + nrm.n * (pos_ft.n - ya);
        push(ConstraintKind::GeofenceHalfspace, h, nrm);
      }
      break;
    }
  }
  return rows;
}

bool in_safe_set(std::span<const BarrierConstraint> rows) {
  for (const BarrierConstraint& c : rows) {
    if (!(c.h_ft >= 0.0)) return false;
  }
  return true;
}

std::vector<BarrierConstraint> build_constraints(const RtaConfig& cfg, const Vec3& lead_pos_ft,
                                                 const Vec3& lead_vel_fps,
                                                 const Vec3& wing_pos_ft,
                                                 const GeofenceSpec& fence) {
  std::vector<BarrierConstraint> rows;
  if (cfg.collision_enabled) {
    BarrierValue v = collision_h(lead_pos_ft, wing_pos_ft, cfg.rho_c_ft * (1.0 + cfg.margin_frac));
    BarrierConstraint c;
    c.id = 0;
    c.kind = ConstraintKind::Collision;
    c.h_ft = v.h_ft;
    c.grad = v.grad;
    c.lf_h = -dot(v.grad, lead_vel_fps);
    c.gamma = cfg.gamma_collision;
    rows.push_back(c);
  }
  if (cfg.geofence_enabled) {
    auto fr = geofence_constraints(fence, wing_pos_ft, cfg.gamma_geofence, 1);
    rows.insert(rows.end(), fr.begin(), fr.end());
  }
  return rows;
}

const char* rta_fault_name(RtaFault f) {
  switch (f) {
    case RtaFault::None: return "none";
    case RtaFault::Infeasible: return "infeasible";
    case RtaFault::BadInput: return "bad_input";
    case RtaFault::FrameOverrun: return "frame_overrun";
  }
  return "?";
}

FilterResult filter(const Vec3& u_des_fps, std::span<const BarrierConstraint> rows,
                    const ControlBox& box, double frame_budget_s) {
  FilterResult out;
  bool timed = std::isfinite(frame_budget_s);
  auto t0 = timed ? std::chrono::steady_clock::now() : std::chrono::steady_clock::time_point{};

  if (!std::isfinite(u_des_fps.e) || !std::isfinite(u_des_fps.n) || !std::isfinite(u_des_fps.u) ||
      !box.well_formed()) {
    out.fault = RtaFault::BadInput;
    return out;
  }
  for (const BarrierConstraint& c : rows) {
    if (!std::isfinite(c.h_ft) || !std::isfinite(c.lf_h) || !std::isfinite(c.grad.e) ||
        !std::isfinite(c.grad.n) || !std::isfinite(c.grad.u) || !(c.gamma > 0.0)) {
      out.fault = RtaFault::BadInput;
      return out;
    }
    out.min_h_ft = std::min(out.min_h_ft, c.h_ft);
  }

  // Assemble the full row set: barrier rows in id order, then box faces.
  std::vector<Row> all;
  all.reserve(rows.size() + 6);
  double scale = std::max(1.0, norm(u_des_fps));
  for (const BarrierConstraint& c : rows) {
    double gn = norm(c.grad);
    if (gn < kTinyGrad) {
      // Zero gradient: the row is independent of u.  Satisfied iff 0 >= rhs.
      if (c.rhs() > 1e-9) {
        out.fault = RtaFault::Infeasible;
        return out;
      }
      continue;
    }
    all.push_back({c.grad, c.rhs(), c.id});
    scale = std::max(scale, std::fabs(c.rhs()) / gn);
  }
  all.push_back({{1.0, 0.0, 0.0}, box.e_min_fps, kBoxRowIdBase + 0});
  all.push_back({{-1.0, 0.0, 0.0}, -box.e_max_fps, kBoxRowIdBase + 1});
  all.push_back({{0.0, 1.0, 0.0}, box.n_min_fps, kBoxRowIdBase + 2});
  all.push_back({{0.0, -1.0, 0.0}, -box.n_max_fps, kBoxRowIdBase + 3});
  all.push_back({{0.0, 0.0, 1.0}, box.u_min_fps, kBoxRowIdBase + 4});
  all.push_back({{0.0, 0.0, -1.0}, -box.u_max_fps, kBoxRowIdBase + 5});

  const int n = static_cast<int>(all.size());
  double feas_tol = 1e-9 * scale;
  auto feasible = [&](const Vec3& u) {
    for (const Row& r : all) {
      if (dot(r.a, u) < r.b - feas_tol) return false;
    }
    return true;
  };

  // Passthrough: an admissible desired command is returned bit-exact.
  if (feasible(u_des_fps)) {
    out.u_safe = u_des_fps;
    out.intervened = false;
    out.objective = 0.0;
    return out;
  }

  // The minimizer of a strictly convex QP is unique, so the first candidate
  // that satisfies the full KKT system is the answer.  Subsets are visited in
  // ascending row order, which fixes the reported active set deterministically.
  // Solving (A A^T) y = b - A u_des gives u = u_des + A^T y with A u = b; the
  // stationarity multipliers of |u - u_des|^2 are lambda = 2 y.
  auto try_subset = [&](const int* idx, int k) -> bool {
    std::array<std::array<double, 3>, 3> g{};
    std::array<double, 3> y{};
    for (int r = 0; r < k; ++r) {
      for (int c2 = 0; c2 < k; ++c2) g[r][c2] = dot(all[idx[r]].a, all[idx[c2]].a);
      y[r] = all[idx[r]].b - dot(all[idx[r]].a, u_des_fps);
    }
    if (!solve_small(k, g, y)) return false;
    for (int r = 0; r < k; ++r) {
      if (y[r] < -1e-10 * scale) return false;
    }
    Vec3 u = u_des_fps;
    for (int r = 0; r < k; ++r) u = u + y[r] * all[idx[r]].a;
    if (!feasible(u)) return false;
    out.u_safe = u;
    out.active.clear();
    for (int r = 0; r < k; ++r) out.active.emplace_back(all[idx[r]].id, 2.0 * y[r]);
    return true;
  };

  bool found = false;
  int idx[3];
  for (int i = 0; i < n && !found; ++i) {
    idx[0] = i;
    found = try_subset(idx, 1);
  }
  if (!found) {
    for (int i = 0; i < n && !found; ++i) {
      for (int j = i + 1; j < n && !found; ++j) {
        idx[0] = i;
        idx[1] = j;
        found = try_subset(idx, 2);
      }
    }
  }
  if (!found) {
    for (int i = 0; i < n && !found; ++i) {
      for (int j = i + 1; j < n && !found; ++j) {
        for (int k = j + 1; k < n && !found; ++k) {
          idx[0] = i;
          idx[1] = j;
          idx[2] = k;
          found = try_subset(idx, 3);
        }
      }
    }
  }

  if (!found) {
    out.u_safe.reset();
    out.fault = RtaFault::Infeasible;
    return out;
  }

  Vec3 diff = *out.u_safe - u_des_fps;
  out.objective = dot(diff, diff);
  out.intervened = norm(diff) > 1e-9 * scale;

  if (timed) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > frame_budget_s) {
      out.u_safe.reset();
      out.fault = RtaFault::FrameOverrun;
    }
  }
  return out;
}

}  // namespace rtasim
