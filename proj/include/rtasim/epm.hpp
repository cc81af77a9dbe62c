#pragma once

#include <array>
#include <cstdint>

#include "rtasim/core.hpp"

namespace rtasim {

// Variables the envelope protection monitor watches, in trip-priority order:
// the first out-of-limits entry in this order names the trip reason.
enum class MonitoredVar : std::uint8_t {
  De = 0,
  Da,
  Dr,
  DeRate,
  DaRate,
  DrRate,
  AlphaAoa,
  Beta,
  NzG,
  NyG,
  VcKt,
  Phi,
  PhiRate,
};
inline constexpr std::size_t kMonitoredVarCount = 13;

const char* monitored_var_name(MonitoredVar v);

double monitored_value(const AircraftState& s, MonitoredVar v);

struct VarRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct TripLimits {
  std::array<VarRange, kMonitoredVarCount> range{};

  // Shipped defaults: Nz in [-1, 4] g, |phi| <= 75 deg, Vc in [120, 450] kt,
  // plus wide surface and rate bands.
  static TripLimits defaults();
  // Permissive limits for scenarios whose focus is elsewhere.
  static TripLimits wide();
};

enum class TripKind : std::uint8_t { None = 0, LimitExceeded, PilotCommand, MonitorFault };

const char* trip_kind_name(TripKind k);

struct TripReason {
  TripKind kind = TripKind::None;
  MonitoredVar var = MonitoredVar::De;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Switching monitor state.  Trips and faults latch until an explicit
// re-engage; a fault always routes control to the pilot.
struct EpmStatus {
  bool engaged = true;
  bool tripped = false;
  bool faulted = false;
  TripReason reason;
  ControlSource selected_source = ControlSource::NncsRta;
};

// Re-engage only succeeds when every variable sits inside the limits shrunk
// by this fraction of each range, so chatter around a limit cannot retrip.
inline constexpr double kReengageHysteresisFrac = 0.02;

// One monitoring step.  A latched status passes through unchanged; otherwise
// variables are scanned in order (non-finite -> fault, out of limits -> trip)
// and a pilot takeover trips with its own reason.
EpmStatus check(const EpmStatus& prev, const AircraftState& s, const TripLimits& lim,
                bool pilot_takeover);

// Explicit re-engage request (test engineer action).  Refused while any
// variable is non-finite or outside the hysteresis-shrunk limits.
EpmStatus reengage(const EpmStatus& status, const AircraftState& s, const TripLimits& lim);

}  // namespace rtasim
