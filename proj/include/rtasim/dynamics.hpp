#pragma once

#include <vector>

#include "rtasim/core.hpp"

namespace rtasim {

// Desk-scale airframe limits and the two turn constants:
// k1 relates bank to turn radius (R = v^2 / (k1 tan phi), v in knots, R in
// feet) and k2 relates bank to turn rate (psi_dot = k2 tan phi / v, deg/s).
struct AirframeModel {
  double max_bank_deg = 60.0;
  double max_bank_rate_dps = 30.0;
  double v_min_kt = 150.0;
  double v_max_kt = 440.0;
  double max_accel_fps2 = 15.0;
  double max_climb_fps = 100.0;
  double k1 = 11.26;
  double k2 = 1091.0;
};

// Magnitudes of the lead's circular motion; omega keeps the bank's sign.
struct TurnGeometry {
  double radius_ft = 0.0;   // > 0 whenever phi != 0
  double omega_dps = 0.0;   // sign matches the bank angle
};

// Throws std::domain_error for v <= 0 or |phi| >= 90.
TurnGeometry turn_geometry(double v_kt, double phi_deg, const AirframeModel& m = {});

// Bank and speed that hold a formation slot at (rho_r, theta_aa) on the lead's
// turn circle; collapses to the lead's own pair for wings-level flight.
struct BankSpeedTarget {
  double phi_deg = 0.0;
  double v_kt = 0.0;
};

BankSpeedTarget target_bank_speed(double v_lead_kt, double phi_lead_deg, double theta_aa_deg,
                                  double rho_r_ft, const AirframeModel& m = {});

// One explicit-Euler step of the coordinated-turn airframe.  Slews bank and
// speed toward the command under the model's rate limits, then integrates
// position with start-of-step heading.  Throws std::invalid_argument on
// non-finite commands or dt <= 0; the state is left untouched in that case.
AircraftState step(const AircraftState& s, const ControlCommand& cmd, double dt_s,
                   const AirframeModel& m = {});

// One explicit-Euler step of the velocity-command plant: position integrates
// the commanded velocity exactly; heading and speed are bookkeeping derived
// from it.  Same error contract as step().
AircraftState step_velocity(const AircraftState& s, const Vec3& u_fps, double dt_s);

// Scripted lead maneuver segment.  speed_kt < 0 means "hold current speed".
struct LeadSegment {
  double duration_s = 0.0;
  double bank_deg = 0.0;
  double speed_kt = -1.0;
  double climb_fps = 0.0;
};

using LeadScript = std::vector<LeadSegment>;

// Command for the segment active at s.t_s; an exhausted script holds the last
// segment, an empty script holds straight and level at current speed.
ControlCommand lead_command(const LeadScript& script, const AircraftState& s);

AircraftState advance_lead(const LeadScript& script, const AircraftState& s, double dt_s,
                           const AirframeModel& m = {});

}  // namespace rtasim
