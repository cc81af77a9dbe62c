#pragma once

#include <deque>

#include "rtasim/core.hpp"

namespace rtasim {

struct SscConfig {
  double ll_ft = 30.0;               // lead length
  double fl_ft = 25.0;               // follow length
  double tnsc_ft = 50.0;             // minimum tail-to-nose clearance
  double tnsc_range_ft = 500.0;      // nose clearance checked inside this range
  double afsc_range_ft = 500.0;      // altitude stack checked inside this range
  double sfc_lo_ft = 100.0;          // closure band lower edge
  double sfc_hi_ft = 300.0;          // closure band upper edge
  double sfc_closure_fps = 10.0;     // largest allowed closure inside the band
  double jec_window_s = 60.0;        // exclusion trail length
  double jec_radius_ft = 50.0;       // exclusion distance from the trail
  double jec_sample_period_s = 1.0;  // trail sampling cadence
};

struct SscVerdict {
  bool violated = false;
  double value = 0.0;   // check-specific figure: clearance, stack, or distance
};

struct SfcVerdict {
  bool violated = false;
  double closure_fps = 0.0;
  double rel_speed_fps = 0.0;   // horizontal relative speed, logged for analysis
};

// Tail-to-nose clearance: violated inside tnsc_range when the projected
// clearance AISL cos|theta| - LL - FL drops to the threshold or the wingman
// leaves the rear half-plane.  Zero separation counts as violated.
SscVerdict check_tnsc(const AircraftState& lead, const AircraftState& wing, const SscConfig& cfg);

// Altitude stack: violated inside afsc_range when the wingman sits above the
// lead; co-altitude is acceptable.
SscVerdict check_afsc(const AircraftState& lead, const AircraftState& wing, const SscConfig& cfg);

// Closure rate: violated when separation is inside [sfc_lo, sfc_hi] and the
// line-of-sight closure -(d/dt AISL) strictly exceeds the limit.
SfcVerdict check_sfc(const AircraftState& lead, const AircraftState& wing, double prev_aisl_ft,
                     double dt_s, const SscConfig& cfg);

struct TrailSample {
  double t_s = 0.0;
  Vec3 pos_ft;
};

// Time-ordered ring of lead positions spanning at most the exclusion window
// plus one sample, so the polyline always covers the full window.
class JetWashTrail {
 public:
  void push(double t_s, const Vec3& pos_ft, const SscConfig& cfg);
  const std::deque<TrailSample>& samples() const { return samples_; }
  void clear() { samples_.clear(); }

 private:
  std::deque<TrailSample> samples_;
};

double point_segment_dist_ft(const Vec3& p, const Vec3& a, const Vec3& b);

// Exclusion zone: violated when the wingman is closer than jec_radius to the
// lead's recent-track polyline.  Fewer than two samples cannot violate.
SscVerdict check_jec(const JetWashTrail& trail, const Vec3& wing_pos_ft, const SscConfig& cfg);

}  // namespace rtasim
