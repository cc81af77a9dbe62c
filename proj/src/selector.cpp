#include "rtasim/selector.hpp"

#include <algorithm>
#include <cmath>

namespace rtasim {

ControlCommand map_velocity_to_command(const Vec3& u_fps, const AircraftState& s,
                                       const AirframeModel& m) {
  ControlCommand cmd;
  cmd.roll_mode = RollMode::BankAngle;
  cmd.pitch_fps = std::min(std::max(u_fps.u, -m.max_climb_fps), m.max_climb_fps);
  cmd.yaw_deg = 0.0;

  double h = hnorm(u_fps);
  if (h <= 1e-9) {
    cmd.roll_deg = 0.0;
    cmd.speed_kt = m.v_min_kt;
    return cmd;
  }

  cmd.speed_kt = std::min(std::max(h / kKtToFps, m.v_min_kt), m.v_max_kt);

  double psi_err = wrap180(heading_of(u_fps.e, u_fps.n) - s.psi_deg);
  double rate_dps = kHeadingGainPerS * psi_err;
  double v = std::max(s.v_true_kt, m.v_min_kt);
  double bank = rad2deg(std::atan(rate_dps * v / m.k2));
  cmd.roll_deg = std::min(std::max(bank, -m.max_bank_deg), m.max_bank_deg);
  return cmd;
}

Selection select(const std::optional<FilterResult>& w2, const PilotOutput& pilot,
                 const EpmStatus& epm, const AircraftState& wing, const AirframeModel& m,
                 SelectorState& state) {
  Selection out;
  out.alert_w14 = !w2.has_value();

  bool monitor_says_pilot = epm.selected_source == ControlSource::Pilot;
  bool w2_usable = w2.has_value() && w2->fault == RtaFault::None && w2->u_safe.has_value();

  if (monitor_says_pilot || !w2_usable) {
    out.source = ControlSource::Pilot;
    out.command = pilot.command;
    out.velocity_fps = pilot.velocity_fps;
  } else {
    out.source = ControlSource::NncsRta;
    out.velocity_fps = *w2->u_safe;
    out.command = map_velocity_to_command(out.velocity_fps, wing, m);
  }

  state.source = out.source;
  state.alert_w14 = out.alert_w14;
  if (w2.has_value()) state.last_w2 = *w2;
  return out;
}

}  // namespace rtasim
