#include "rtasim/epm.hpp"

#include <cmath>

namespace rtasim {

const char* monitored_var_name(MonitoredVar v) {
  switch (v) {
    case MonitoredVar::De: return "de";
    case MonitoredVar::Da: return "da";
    case MonitoredVar::Dr: return "dr";
    case MonitoredVar::DeRate: return "de_rate";
    case MonitoredVar::DaRate: return "da_rate";
    case MonitoredVar::DrRate: return "dr_rate";
    case MonitoredVar::AlphaAoa: return "alpha";
    case MonitoredVar::Beta: return "beta";
    case MonitoredVar::NzG: return "nz";
    case MonitoredVar::NyG: return "ny";
    case MonitoredVar::VcKt: return "vc";
    case MonitoredVar::Phi: return "phi";
    case MonitoredVar::PhiRate: return "phi_rate";
  }
  return "?";
}

double monitored_value(const AircraftState& s, MonitoredVar v) {
  switch (v) {
    case MonitoredVar::De: return s.env.de_deg;
    case MonitoredVar::Da: return s.env.da_deg;
    case MonitoredVar::Dr: return s.env.dr_deg;
    case MonitoredVar::DeRate: return s.env.de_rate_dps;
    case MonitoredVar::DaRate: return s.env.da_rate_dps;
    case MonitoredVar::DrRate: return s.env.dr_rate_dps;
    case MonitoredVar::AlphaAoa: return s.env.alpha_deg;
    case MonitoredVar::Beta: return s.env.beta_deg;
    case MonitoredVar::NzG: return s.env.nz_g;
    case MonitoredVar::NyG: return s.env.ny_g;
    case MonitoredVar::VcKt: return s.env.vc_kt;
    case MonitoredVar::Phi: return s.phi_deg;
    case MonitoredVar::PhiRate: return s.env.phi_rate_dps;
  }
  return 0.0;
}

TripLimits TripLimits::defaults() {
  TripLimits t;
  auto set = [&t](MonitoredVar v, double lo, double hi) {
    t.range[static_cast<std::size_t>(v)] = {lo, hi};
  };
  set(MonitoredVar::De, -25.0, 25.0);
  set(MonitoredVar::Da, -25.0, 25.0);
  set(MonitoredVar::Dr, -30.0, 30.0);
  set(MonitoredVar::DeRate, -60.0, 60.0);
  set(MonitoredVar::DaRate, -60.0, 60.0);
  set(MonitoredVar::DrRate, -60.0, 60.0);
  set(MonitoredVar::AlphaAoa, -5.0, 25.0);
  set(MonitoredVar::Beta, -10.0, 10.0);
  set(MonitoredVar::NzG, -1.0, 4.0);
  set(MonitoredVar::NyG, -1.0, 1.0);
  set(MonitoredVar::VcKt, 120.0, 450.0);
  set(MonitoredVar::Phi, -75.0, 75.0);
  set(MonitoredVar::PhiRate, -90.0, 90.0);
  return t;
}

TripLimits TripLimits::wide() {
  TripLimits t;
  for (VarRange& r : t.range) r = {-1e9, 1e9};
  return t;
}

const char* trip_kind_name(TripKind k) {
  switch (k) {
    case TripKind::None: return "none";
    case TripKind::LimitExceeded: return "limit_exceeded";
    case TripKind::PilotCommand: return "pilot_command";
    case TripKind::MonitorFault: return "monitor_fault";
  }
  return "?";
}

EpmStatus check(const EpmStatus& prev, const AircraftState& s, const TripLimits& lim,
                bool pilot_takeover) {
  // Latched: the first trip or fault holds until an explicit re-engage.
  if (prev.tripped || prev.faulted) return prev;

  EpmStatus out = prev;
  out.selected_source = ControlSource::NncsRta;

  for (std::size_t i = 0; i < kMonitoredVarCount; ++i) {
    MonitoredVar v = static_cast<MonitoredVar>(i);
    double x = monitored_value(s, v);
    const VarRange& r = lim.range[i];
    if (!std::isfinite(x)) {
      out.faulted = true;
      out.reason = {TripKind::MonitorFault, v, x, r.lo, r.hi};
      out.selected_source = ControlSource::Pilot;
      return out;
    }
    if (x < r.lo || x > r.hi) {
      out.tripped = true;
      out.reason = {TripKind::LimitExceeded, v, x, r.lo, r.hi};
      out.selected_source = ControlSource::Pilot;
      return out;
    }
  }

  if (pilot_takeover) {
    out.tripped = true;
    out.reason = {TripKind::PilotCommand, MonitoredVar::De, 0.0, 0.0, 0.0};
    out.selected_source = ControlSource::Pilot;
  }
  return out;
}

EpmStatus reengage(const EpmStatus& status, const AircraftState& s, const TripLimits& lim) {
  for (std::size_t i = 0; i < kMonitoredVarCount; ++i) {
    double x = monitored_value(s, static_cast<MonitoredVar>(i));
    const VarRange& r = lim.range[i];
    double guard = kReengageHysteresisFrac * (r.hi - r.lo);
    if (!std::isfinite(x) || x < r.lo + guard || x > r.hi - guard) {
      return status;   // refused; the latch holds
    }
  }
  EpmStatus out;
  out.engaged = true;
  out.tripped = false;
  out.faulted = false;
  out.reason = TripReason{};
  out.selected_source = ControlSource::NncsRta;
  return out;
}

}  // namespace rtasim
