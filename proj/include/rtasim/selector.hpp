#pragma once

#include <optional>

#include "rtasim/core.hpp"
#include "rtasim/dynamics.hpp"
#include "rtasim/epm.hpp"
#include "rtasim/rta.hpp"

namespace rtasim {

// Heading alignment gain used when turning a velocity command into a bank
// command: requested turn rate = gain * heading error.
inline constexpr double kHeadingGainPerS = 1.0;

// Velocity-to-command mapping for the coordinated-turn airframe: speed from
// the horizontal magnitude (clamped to the speed range), bank from inverting
// psi_dot = k2 tan(phi) / v for the heading error, climb straight through.
// A zero horizontal command holds the current heading at minimum speed.
ControlCommand map_velocity_to_command(const Vec3& u_fps, const AircraftState& s,
                                       const AirframeModel& m);

// What the pilot path supplies each frame: the raw command plus the velocity
// intent it was mapped from (the velocity plant consumes the latter).
struct PilotOutput {
  ControlCommand command;
  Vec3 velocity_fps;
};

struct SelectorState {
  ControlSource source = ControlSource::Pilot;
  bool alert_w14 = false;
  std::optional<FilterResult> last_w2;
};

struct Selection {
  ControlSource source = ControlSource::Pilot;
  ControlCommand command;        // outgoing actuation command
  Vec3 velocity_fps;             // matching velocity intent
  bool alert_w14 = false;        // raised while the filtered command is absent
};

// Source arbitration: the pilot wins whenever the monitor says pilot, the
// filtered command is absent, or it carries a fault; every failure mode
// resolves to the pilot.  The absence alert fires on the exact first frame of
// absence and clears on recovery.
Selection select(const std::optional<FilterResult>& w2, const PilotOutput& pilot,
                 const EpmStatus& epm, const AircraftState& wing, const AirframeModel& m,
                 SelectorState& state);

}  // namespace rtasim
