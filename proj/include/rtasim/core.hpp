#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rtasim/vec.hpp"

namespace rtasim {

// Envelope variables synthesized by the dynamics layer and watched by the
// envelope protection monitor.
struct EnvelopeState {
  double alpha_deg = 0.0;       // angle of attack
  double beta_deg = 0.0;        // sideslip
  double nz_g = 1.0;            // normal acceleration
  double ny_g = 0.0;            // lateral acceleration
  double vc_kt = 0.0;           // calibrated airspeed
  double phi_rate_dps = 0.0;    // roll rate
  double de_deg = 0.0;          // elevator
  double da_deg = 0.0;          // aileron
  double dr_deg = 0.0;          // rudder
  double de_rate_dps = 0.0;
  double da_rate_dps = 0.0;
  double dr_rate_dps = 0.0;
};

struct AircraftState {
  double t_s = 0.0;
  double e_ft = 0.0;
  double n_ft = 0.0;
  double u_ft = 0.0;
  double psi_deg = 0.0;         // heading, see heading_unit for the E-N convention
  double phi_deg = 0.0;         // bank
  double v_true_kt = 0.0;       // horizontal true airspeed
  double ve_fps = 0.0;
  double vn_fps = 0.0;
  double vu_fps = 0.0;
  EnvelopeState env;
};

inline Vec3 position(const AircraftState& s) { return {s.e_ft, s.n_ft, s.u_ft}; }
inline Vec3 velocity(const AircraftState& s) { return {s.ve_fps, s.vn_fps, s.vu_fps}; }

// Builds a state whose velocity triple and envelope are consistent with
// (v_true, psi, phi): straight flight velocities plus the synthesized
// coordinated-turn load factor.
AircraftState make_state(double e_ft, double n_ft, double u_ft, double psi_deg, double phi_deg,
                         double v_true_kt, double t_s = 0.0);

enum class ControlSource : std::uint8_t { NncsRta = 0, Pilot = 1 };

enum class RollMode : std::uint8_t { BankAngle = 0, TurnRate = 1 };

// Command vocabulary on the pilot/selector path: climb rate, roll, speed, yaw.
struct ControlCommand {
  double pitch_fps = 0.0;       // commanded climb rate
  double roll_deg = 0.0;        // bank angle or turn rate depending on roll_mode
  RollMode roll_mode = RollMode::BankAngle;
  double speed_kt = 0.0;
  double yaw_deg = 0.0;         // passthrough trim, unused by the desk-scale airframe
};

// ---------------------------------------------------------------------------
// Position reports and their validation.

enum class ReportField : std::uint8_t {
  Timestamp = 0,
  Position,
  Orientation,
  OrientationRates,
  Tas,
  Cas,
  Velocity,
  Acceleration,
  NormalAccel,
  Fuel,
  Pla,
  Wind,
};
inline constexpr std::size_t kReportFieldCount = 12;

const char* report_field_name(ReportField f);

struct PositionReport {
  double timestamp_s = 0.0;
  int test_point_id = 0;
  double e_ft = 0.0, n_ft = 0.0, u_ft = 0.0;
  double phi_deg = 0.0, theta_deg = 0.0, psi_deg = 0.0;
  double phi_rate_dps = 0.0, theta_rate_dps = 0.0, psi_rate_dps = 0.0;
  double tas_kt = 0.0;
  double cas_kt = 0.0;
  double ve_fps = 0.0, vn_fps = 0.0, vu_fps = 0.0;
  double ae_fps2 = 0.0, an_fps2 = 0.0, au_fps2 = 0.0;
  double nz_g = 1.0;
  double fuel_lb = 0.0;
  double pla_pct = 0.0;
  double wind_e_fps = 0.0, wind_n_fps = 0.0;
  // Sender-side validity marks; a false entry invalidates that field.
  std::array<bool, kReportFieldCount> sender_valid{};
  std::string sender_reason;

  PositionReport() { sender_valid.fill(true); }
};

inline Vec3 report_position(const PositionReport& r) { return {r.e_ft, r.n_ft, r.u_ft}; }
inline Vec3 report_velocity(const PositionReport& r) { return {r.ve_fps, r.vn_fps, r.vu_fps}; }

// Physical-plausibility bounds applied by the receiver.
struct ReportLimits {
  double max_speed_kt = 600.0;        // bounds TAS, CAS, velocity norm and position jumps
  double max_accel_g = 10.0;
  double max_orient_rate_dps = 90.0;  // bounds reported rates and orientation history jumps
  double pla_min_pct = 0.0;
  double pla_max_pct = 130.0;
  double min_alt_ft = -1000.0;
  double max_alt_ft = 60000.0;
  double max_wind_fps = 200.0;
};

// Failure classes a validation verdict can raise; the contingency table maps
// each one to a plan.
enum class ValidationFailureKind : std::uint8_t {
  ReportDropout = 0,        // no report for longer than the staleness budget
  NonMonotonicTimestamp,
  InvalidPosition,
  InvalidOrientation,
  InvalidVelocity,
  InvalidField,             // any other field out of bounds or sender-flagged
};
inline constexpr std::size_t kValidationFailureKindCount = 6;

const char* validation_failure_name(ValidationFailureKind k);

struct ValidationResult {
  bool valid = true;                                  // whole-report verdict
  std::array<bool, kReportFieldCount> field_valid{};  // per-field verdicts
  ValidationFailureKind failure = ValidationFailureKind::InvalidField;
  std::string reason;                                 // first failure, human readable

  ValidationResult() { field_valid.fill(true); }
};

// Pure and idempotent: never throws, never mutates inputs.  `prev` is the most
// recently accepted report (null when none) and anchors the history checks.
ValidationResult validate_report(const PositionReport& r, const PositionReport* prev,
                                 const ReportLimits& lim);

// ---------------------------------------------------------------------------
// Contingency selection.

enum class ContingencyPlan : std::uint8_t {
  MaintainCurrentPath = 0,
  Loiter,
  FlyToPoint,
  TerminateToPilot,
};

const char* contingency_plan_name(ContingencyPlan p);

// Total map from failure kind to plan; construction guarantees completeness.
struct ContingencyTable {
  std::array<ContingencyPlan, kValidationFailureKindCount> plan{};

  // Shipped defaults, frozen: dropout, velocity and generic field failures
  // keep the current path, orientation failures loiter, position and
  // timestamp failures hand the aircraft to the pilot.
  static ContingencyTable defaults();
};

ContingencyPlan select_contingency(ValidationFailureKind kind, const ContingencyTable& table);

// ---------------------------------------------------------------------------
// Formation geometry.

// Horizontal separation between the aircraft, feet.
double aisl_ft(const AircraftState& lead, const AircraftState& wing);

// Signed angle from the lead's tail direction to the bearing of the wingman,
// in (-180, 180]; positive on the lead's starboard side.  Throws
// std::domain_error when the horizontal separation is zero.
double aspect_angle_deg(double lead_e_ft, double lead_n_ft, double lead_psi_deg,
                        double wing_e_ft, double wing_n_ft);
double aspect_angle_deg(const AircraftState& lead, const AircraftState& wing);

}  // namespace rtasim
