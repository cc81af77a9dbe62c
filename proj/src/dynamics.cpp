#include "rtasim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtasim {

namespace {

// Actuator slew for the synthesized control surfaces; keeps discrete surface
// rates inside the monitored bands during abrupt maneuver onsets.
constexpr double kSurfaceSlewDps = 50.0;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Move toward target by at most max_delta.
double slew(double current, double target, double max_delta) {
  return current + clamp(target - current, -max_delta, max_delta);
}

bool finite_cmd(const ControlCommand& c) {
  return std::isfinite(c.pitch_fps) && std::isfinite(c.roll_deg) && std::isfinite(c.speed_kt) &&
         std::isfinite(c.yaw_deg);
}

}  // namespace

TurnGeometry turn_geometry(double v_kt, double phi_deg, const AirframeModel& m) {
  if (!(v_kt > 0.0)) throw std::domain_error("turn geometry requires positive speed");
  if (std::fabs(phi_deg) >= 90.0) throw std::domain_error("turn geometry requires |bank| < 90");
  TurnGeometry g;
  double t = std::tan(deg2rad(phi_deg));
  g.omega_dps = m.k2 * t / v_kt;
  g.radius_ft = (phi_deg == 0.0) ? std::numeric_limits<double>::infinity()
                                 : std::fabs(v_kt * v_kt / (m.k1 * t));
  return g;
}

BankSpeedTarget target_bank_speed(double v_lead_kt, double phi_lead_deg, double theta_aa_deg,
                                  double rho_r_ft, const AirframeModel& m) {
  if (phi_lead_deg == 0.0) return {phi_lead_deg, v_lead_kt};
  if (!(v_lead_kt > 0.0)) throw std::domain_error("bank/speed target requires positive lead speed");
  if (std::fabs(phi_lead_deg) >= 90.0) {
    throw std::domain_error("bank/speed target requires |bank| < 90");
  }

  double tan_phi = std::tan(deg2rad(phi_lead_deg));
  double r_lead = std::fabs(v_lead_kt * v_lead_kt / (m.k1 * tan_phi));
  double omega_lead = m.k2 * tan_phi / v_lead_kt;                // deg/s, signed with bank
  double s = std::fabs(std::sin(deg2rad(theta_aa_deg)));

  // Same-sign aspect puts the slot inside the lead's circle: smaller radius,
  // slower co-rotation speed. Opposite sign is outside: larger and faster.
  bool same_sign = (phi_lead_deg < 0.0 && theta_aa_deg < 0.0) ||
                   (phi_lead_deg > 0.0 && theta_aa_deg > 0.0);
  double r_slot = same_sign ? r_lead - rho_r_ft * s : r_lead + rho_r_ft * s;
  double v_r = v_lead_kt * r_slot / r_lead;

  double omega_r = omega_lead;   // the slot co-rotates with the lead
  double phi_r = rad2deg(std::atan(v_r * omega_r / m.k2));
  return {phi_r, v_r};
}

AircraftState step(const AircraftState& s, const ControlCommand& cmd, double dt_s,
                   const AirframeModel& m) {
  if (!finite_cmd(cmd)) throw std::invalid_argument("non-finite control command");
  if (!(dt_s > 0.0)) throw std::invalid_argument("step requires dt > 0");

  double phi_target;
  if (cmd.roll_mode == RollMode::BankAngle) {
    phi_target = cmd.roll_deg;
  } else {
    // Invert psi_dot = k2 tan(phi) / v for the requested turn rate.
    phi_target = rad2deg(std::atan(cmd.roll_deg * std::max(s.v_true_kt, 1.0) / m.k2));
  }
  phi_target = clamp(phi_target, -m.max_bank_deg, m.max_bank_deg);
  double phi = slew(s.phi_deg, phi_target, m.max_bank_rate_dps * dt_s);

  double v_target = clamp(cmd.speed_kt, m.v_min_kt, m.v_max_kt);
  double v = slew(s.v_true_kt, v_target, (m.max_accel_fps2 / kKtToFps) * dt_s);

  double psi_dot = (v > 0.0) ? m.k2 * std::tan(deg2rad(phi)) / v : 0.0;
  double climb = clamp(cmd.pitch_fps, -m.max_climb_fps, m.max_climb_fps);

  // Position integrates the start-of-step heading at the slewed speed.
  Vec3 dir = heading_unit(s.psi_deg);
  AircraftState out = s;
  out.t_s = s.t_s + dt_s;
  out.ve_fps = v * kKtToFps * dir.e;
  out.vn_fps = v * kKtToFps * dir.n;
  out.vu_fps = climb;
  out.e_ft = s.e_ft + out.ve_fps * dt_s;
  out.n_ft = s.n_ft + out.vn_fps * dt_s;
  out.u_ft = s.u_ft + climb * dt_s;
  out.psi_deg = wrap360(s.psi_deg + psi_dot * dt_s);
  out.phi_deg = phi;
  out.v_true_kt = v;

  EnvelopeState& e = out.env;
  double nz = 1.0 / std::cos(deg2rad(phi));
  double phi_rate = (phi - s.phi_deg) / dt_s;
  // Surfaces track their aero targets through a finite-rate actuator, so the
  // discrete surface rates stay inside real actuator bands even when a
  // maneuver starts abruptly.
  double de = slew(s.env.de_deg, -2.0 * (nz - 1.0), kSurfaceSlewDps * dt_s);
  double da = slew(s.env.da_deg, phi_rate / 10.0, kSurfaceSlewDps * dt_s);
  e.alpha_deg = 2.0 + 3.0 * (nz - 1.0);
  e.beta_deg = 0.0;
  e.nz_g = nz;
  e.ny_g = 0.0;
  e.vc_kt = v;
  e.phi_rate_dps = phi_rate;
  e.de_rate_dps = (de - s.env.de_deg) / dt_s;
  e.da_rate_dps = (da - s.env.da_deg) / dt_s;
  e.dr_rate_dps = (0.0 - s.env.dr_deg) / dt_s;
  e.de_deg = de;
  e.da_deg = da;
  e.dr_deg = 0.0;
  return out;
}

AircraftState step_velocity(const AircraftState& s, const Vec3& u_fps, double dt_s) {
  if (!std::isfinite(u_fps.e) || !std::isfinite(u_fps.n) || !std::isfinite(u_fps.u)) {
    throw std::invalid_argument("non-finite velocity command");
  }
  if (!(dt_s > 0.0)) throw std::invalid_argument("step requires dt > 0");

  AircraftState out = s;
  out.t_s = s.t_s + dt_s;
  out.e_ft = s.e_ft + u_fps.e * dt_s;
  out.n_ft = s.n_ft + u_fps.n * dt_s;
  out.u_ft = s.u_ft + u_fps.u * dt_s;
  out.ve_fps = u_fps.e;
  out.vn_fps = u_fps.n;
  out.vu_fps = u_fps.u;
  double h = hnorm(u_fps);
  out.v_true_kt = h / kKtToFps;
  out.psi_deg = (h > 1e-12) ? wrap360(heading_of(u_fps.e, u_fps.n)) : s.psi_deg;
  out.phi_deg = 0.0;

  EnvelopeState& e = out.env;
  e = EnvelopeState{};
  e.alpha_deg = 2.0;
  e.vc_kt = out.v_true_kt;
  return out;
}

ControlCommand lead_command(const LeadScript& script, const AircraftState& s) {
  ControlCommand cmd;
  cmd.roll_mode = RollMode::BankAngle;
  cmd.roll_deg = 0.0;
  cmd.pitch_fps = 0.0;
  cmd.speed_kt = s.v_true_kt;
  if (script.empty()) return cmd;

  const LeadSegment* seg = &script.back();
  double t0 = 0.0;
  for (const LeadSegment& cand : script) {
    if (s.t_s < t0 + cand.duration_s) {
      seg = &cand;
      break;
    }
    t0 += cand.duration_s;
  }
  cmd.roll_deg = seg->bank_deg;
  cmd.pitch_fps = seg->climb_fps;
  cmd.speed_kt = seg->speed_kt < 0.0 ? s.v_true_kt : seg->speed_kt;
  return cmd;
}

AircraftState advance_lead(const LeadScript& script, const AircraftState& s, double dt_s,
                           const AirframeModel& m) {
  return step(s, lead_command(script, s), dt_s, m);
}

}  // namespace rtasim
