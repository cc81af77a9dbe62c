#include "rtasim/ssc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtasim {

SscVerdict check_tnsc(const AircraftState& lead, const AircraftState& wing, const SscConfig& cfg) {
  SscVerdict v;
  double range = aisl_ft(lead, wing);
  if (range >= cfg.tnsc_range_ft) {
    v.value = range - cfg.ll_ft - cfg.fl_ft;
    return v;
  }
  if (range <= 1e-9) {
    v.violated = true;
    v.value = -cfg.ll_ft - cfg.fl_ft;
    return v;
  }
  double theta = aspect_angle_deg(lead, wing);
  double tns = range * std::cos(deg2rad(std::fabs(theta))) - cfg.ll_ft - cfg.fl_ft;
  v.value = tns;
  v.violated = tns <= cfg.tnsc_ft || std::fabs(theta) >= 90.0;
  return v;
}

SscVerdict check_afsc(const AircraftState& lead, const AircraftState& wing, const SscConfig& cfg) {
  SscVerdict v;
  v.value = wing.u_ft - lead.u_ft;   // positive when the wingman is above
  v.violated = aisl_ft(lead, wing) < cfg.afsc_range_ft && wing.u_ft > lead.u_ft;
  return v;
}

SfcVerdict check_sfc(const AircraftState& lead, const AircraftState& wing, double prev_aisl_ft,
                     double dt_s, const SscConfig& cfg) {
  SfcVerdict v;
  double range = aisl_ft(lead, wing);
  v.closure_fps = (dt_s > 0.0) ? -(range - prev_aisl_ft) / dt_s : 0.0;
  v.rel_speed_fps = std::hypot(lead.ve_fps - wing.ve_fps, lead.vn_fps - wing.vn_fps);
  v.violated = range >= cfg.sfc_lo_ft && range <= cfg.sfc_hi_ft &&
               v.closure_fps > cfg.sfc_closure_fps;
  return v;
}

void JetWashTrail::push(double t_s, const Vec3& pos_ft, const SscConfig& cfg) {
  samples_.push_back({t_s, pos_ft});
  // Keep one sample older than the window so the polyline spans all of it.
  while (samples_.size() >= 2 && samples_[1].t_s <= t_s - cfg.jec_window_s) {
    samples_.pop_front();
  }
}

double point_segment_dist_ft(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 <= 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len2;
  t = std::min(std::max(t, 0.0), 1.0);
  return norm(p - (a + t * ab));
}

SscVerdict check_jec(const JetWashTrail& trail, const Vec3& wing_pos_ft, const SscConfig& cfg) {
  SscVerdict v;
  const auto& s = trail.samples();
  if (s.size() < 2) {
    v.value = std::numeric_limits<double>::infinity();
    return v;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    best = std::min(best, point_segment_dist_ft(wing_pos_ft, s[i].pos_ft, s[i + 1].pos_ft));
  }
  v.value = best;
  v.violated = best < cfg.jec_radius_ft;
  return v;
}

}  // namespace rtasim
