#include "rtasim/core.hpp"

#include <cmath>
#include <stdexcept>

namespace rtasim {

namespace {

bool finite(double x) { return std::isfinite(x); }

struct FieldCheck {
  ValidationResult* out;
  const PositionReport& r;
  bool first_set = false;

  void fail(ReportField f, ValidationFailureKind kind, const std::string& why) {
    out->field_valid[static_cast<std::size_t>(f)] = false;
    out->valid = false;
    if (!first_set) {
      out->failure = kind;
      out->reason = std::string(report_field_name(f)) + ": " + why;
      first_set = true;
    }
  }
};

ValidationFailureKind kind_for(ReportField f) {
  switch (f) {
    case ReportField::Timestamp: return ValidationFailureKind::NonMonotonicTimestamp;
    case ReportField::Position: return ValidationFailureKind::InvalidPosition;
    case ReportField::Orientation:
    case ReportField::OrientationRates: return ValidationFailureKind::InvalidOrientation;
    case ReportField::Tas:
    case ReportField::Cas:
    case ReportField::Velocity: return ValidationFailureKind::InvalidVelocity;
    default: return ValidationFailureKind::InvalidField;
  }
}

}  // namespace

AircraftState make_state(double e_ft, double n_ft, double u_ft, double psi_deg, double phi_deg,
                         double v_true_kt, double t_s) {
  AircraftState s;
  s.t_s = t_s;
  s.e_ft = e_ft;
  s.n_ft = n_ft;
  s.u_ft = u_ft;
  s.psi_deg = wrap360(psi_deg);
  s.phi_deg = phi_deg;
  s.v_true_kt = v_true_kt;
  Vec3 dir = heading_unit(s.psi_deg);
  s.ve_fps = v_true_kt * kKtToFps * dir.e;
  s.vn_fps = v_true_kt * kKtToFps * dir.n;
  s.vu_fps = 0.0;
  s.env.nz_g = 1.0 / std::cos(deg2rad(phi_deg));
  s.env.vc_kt = v_true_kt;
  return s;
}

const char* report_field_name(ReportField f) {
  switch (f) {
    case ReportField::Timestamp: return "timestamp";
    case ReportField::Position: return "position";
    case ReportField::Orientation: return "orientation";
    case ReportField::OrientationRates: return "orientation_rates";
    case ReportField::Tas: return "tas";
    case ReportField::Cas: return "cas";
    case ReportField::Velocity: return "velocity";
    case ReportField::Acceleration: return "acceleration";
    case ReportField::NormalAccel: return "normal_accel";
    case ReportField::Fuel: return "fuel";
    case ReportField::Pla: return "pla";
    case ReportField::Wind: return "wind";
  }
  return "?";
}

const char* validation_failure_name(ValidationFailureKind k) {
  switch (k) {
    case ValidationFailureKind::ReportDropout: return "report_dropout";
    case ValidationFailureKind::NonMonotonicTimestamp: return "non_monotonic_timestamp";
    case ValidationFailureKind::InvalidPosition: return "invalid_position";
    case ValidationFailureKind::InvalidOrientation: return "invalid_orientation";
    case ValidationFailureKind::InvalidVelocity: return "invalid_velocity";
    case ValidationFailureKind::InvalidField: return "invalid_field";
  }
  return "?";
}

ValidationResult validate_report(const PositionReport& r, const PositionReport* prev,
                                 const ReportLimits& lim) {
  ValidationResult out;
  FieldCheck c{&out, r};

  // Sender-set marks dominate: the sender already knows the field is bad.
  for (std::size_t i = 0; i < kReportFieldCount; ++i) {
    if (!r.sender_valid[i]) {
      ReportField f = static_cast<ReportField>(i);
      c.fail(f, kind_for(f),
             r.sender_reason.empty() ? "sender flagged invalid" : r.sender_reason);
    }
  }

  // Timestamp: non-finite or non-monotonic flags the whole report.
  if (!finite(r.timestamp_s)) {
    c.fail(ReportField::Timestamp, ValidationFailureKind::NonMonotonicTimestamp, "non-finite");
  } else if (prev && r.timestamp_s <= prev->timestamp_s) {
    c.fail(ReportField::Timestamp, ValidationFailureKind::NonMonotonicTimestamp,
           "not after previous report");
  }
  double dt_s = (prev && finite(r.timestamp_s)) ? r.timestamp_s - prev->timestamp_s : 0.0;

  // Position: finite, inside the altitude band, and consistent with the last
  // accepted report under the configured speed bound.
  if (!finite(r.e_ft) || !finite(r.n_ft) || !finite(r.u_ft)) {
    c.fail(ReportField::Position, ValidationFailureKind::InvalidPosition, "non-finite");
  } else if (r.u_ft < lim.min_alt_ft || r.u_ft > lim.max_alt_ft) {
    c.fail(ReportField::Position, ValidationFailureKind::InvalidPosition, "altitude out of band");
  } else if (prev && dt_s > 0.0) {
    double jump = norm(report_position(r) - report_position(*prev));
    if (jump > lim.max_speed_kt * kKtToFps * dt_s) {
      c.fail(ReportField::Position, ValidationFailureKind::InvalidPosition,
             "jump exceeds speed bound");
    }
  }

  // Orientation: finite, plausible angles, and rate-consistent with history.
  if (!finite(r.phi_deg) || !finite(r.theta_deg) || !finite(r.psi_deg)) {
    c.fail(ReportField::Orientation, ValidationFailureKind::InvalidOrientation, "non-finite");
  } else if (std::fabs(r.phi_deg) > 180.0 || std::fabs(r.theta_deg) > 90.0) {
    c.fail(ReportField::Orientation, ValidationFailureKind::InvalidOrientation, "angle out of range");
  } else if (prev && dt_s > 0.0) {
    double bound = lim.max_orient_rate_dps * dt_s;
    if (std::fabs(wrap180(r.phi_deg - prev->phi_deg)) > bound ||
        std::fabs(wrap180(r.theta_deg - prev->theta_deg)) > bound ||
        std::fabs(wrap180(r.psi_deg - prev->psi_deg)) > bound) {
      c.fail(ReportField::Orientation, ValidationFailureKind::InvalidOrientation,
             "jump exceeds rate bound");
    }
  }

  if (!finite(r.phi_rate_dps) || !finite(r.theta_rate_dps) || !finite(r.psi_rate_dps)) {
    c.fail(ReportField::OrientationRates, ValidationFailureKind::InvalidOrientation, "non-finite");
  } else if (std::fabs(r.phi_rate_dps) > lim.max_orient_rate_dps ||
             std::fabs(r.theta_rate_dps) > lim.max_orient_rate_dps ||
             std::fabs(r.psi_rate_dps) > lim.max_orient_rate_dps) {
    c.fail(ReportField::OrientationRates, ValidationFailureKind::InvalidOrientation,
           "rate out of range");
  }

  if (!finite(r.tas_kt) || r.tas_kt < 0.0 || r.tas_kt > lim.max_speed_kt) {
    c.fail(ReportField::Tas, ValidationFailureKind::InvalidVelocity, "out of range");
  }
  if (!finite(r.cas_kt) || r.cas_kt < 0.0 || r.cas_kt > lim.max_speed_kt) {
    c.fail(ReportField::Cas, ValidationFailureKind::InvalidVelocity, "out of range");
  }

  if (!finite(r.ve_fps) || !finite(r.vn_fps) || !finite(r.vu_fps)) {
    c.fail(ReportField::Velocity, ValidationFailureKind::InvalidVelocity, "non-finite");
  } else if (norm(report_velocity(r)) > lim.max_speed_kt * kKtToFps) {
    c.fail(ReportField::Velocity, ValidationFailureKind::InvalidVelocity, "speed out of range");
  }

  if (!finite(r.ae_fps2) || !finite(r.an_fps2) || !finite(r.au_fps2)) {
    c.fail(ReportField::Acceleration, ValidationFailureKind::InvalidField, "non-finite");
  } else if (norm(Vec3{r.ae_fps2, r.an_fps2, r.au_fps2}) > lim.max_accel_g * kGravityFps2) {
    c.fail(ReportField::Acceleration, ValidationFailureKind::InvalidField,
           "acceleration out of range");
  }

  if (!finite(r.nz_g) || std::fabs(r.nz_g) > lim.max_accel_g) {
    c.fail(ReportField::NormalAccel, ValidationFailureKind::InvalidField, "out of range");
  }

  if (!finite(r.fuel_lb) || r.fuel_lb < 0.0) {
    c.fail(ReportField::Fuel, ValidationFailureKind::InvalidField, "negative or non-finite");
  }

  if (!finite(r.pla_pct) || r.pla_pct < lim.pla_min_pct || r.pla_pct > lim.pla_max_pct) {
    c.fail(ReportField::Pla, ValidationFailureKind::InvalidField, "out of range");
  }

  if (!finite(r.wind_e_fps) || !finite(r.wind_n_fps)) {
    c.fail(ReportField::Wind, ValidationFailureKind::InvalidField, "non-finite");
  } else if (std::hypot(r.wind_e_fps, r.wind_n_fps) > lim.max_wind_fps) {
    c.fail(ReportField::Wind, ValidationFailureKind::InvalidField, "wind out of range");
  }

  return out;
}

const char* contingency_plan_name(ContingencyPlan p) {
  switch (p) {
    case ContingencyPlan::MaintainCurrentPath: return "maintain_current_path";
    case ContingencyPlan::Loiter: return "loiter";
    case ContingencyPlan::FlyToPoint: return "fly_to_point";
    case ContingencyPlan::TerminateToPilot: return "terminate_to_pilot";
  }
  return "?";
}

ContingencyTable ContingencyTable::defaults() {
  ContingencyTable t;
  auto set = [&t](ValidationFailureKind k, ContingencyPlan p) {
    t.plan[static_cast<std::size_t>(k)] = p;
  };
  set(ValidationFailureKind::ReportDropout, ContingencyPlan::MaintainCurrentPath);
  set(ValidationFailureKind::NonMonotonicTimestamp, ContingencyPlan::TerminateToPilot);
  set(ValidationFailureKind::InvalidPosition, ContingencyPlan::TerminateToPilot);
  set(ValidationFailureKind::InvalidOrientation, ContingencyPlan::Loiter);
  set(ValidationFailureKind::InvalidVelocity, ContingencyPlan::MaintainCurrentPath);
  set(ValidationFailureKind::InvalidField, ContingencyPlan::MaintainCurrentPath);
  return t;
}

ContingencyPlan select_contingency(ValidationFailureKind kind, const ContingencyTable& table) {
  return table.plan[static_cast<std::size_t>(kind)];
}

double aisl_ft(const AircraftState& lead, const AircraftState& wing) {
  return std::hypot(lead.e_ft - wing.e_ft, lead.n_ft - wing.n_ft);
}

double aspect_angle_deg(double lead_e_ft, double lead_n_ft, double lead_psi_deg,
                        double wing_e_ft, double wing_n_ft) {
  double de = wing_e_ft - lead_e_ft;
  double dn = wing_n_ft - lead_n_ft;
  if (std::hypot(de, dn) <= 0.0) {
    throw std::domain_error("aspect angle undefined at zero horizontal separation");
  }
  return wrap180(heading_of(de, dn) - lead_psi_deg - 180.0);
}

double aspect_angle_deg(const AircraftState& lead, const AircraftState& wing) {
  return aspect_angle_deg(lead.e_ft, lead.n_ft, lead.psi_deg, wing.e_ft, wing.n_ft);
}

}  // namespace rtasim
