#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rtasim/core.hpp"
#include "rtasim/dynamics.hpp"

using namespace rtasim;

namespace {

PositionReport healthy_report(double t_s) {
  PositionReport r;
  r.timestamp_s = t_s;
  r.test_point_id = 1;
  r.e_ft = 1000.0;
  r.n_ft = 2000.0;
  r.u_ft = 10000.0;
  r.psi_deg = 90.0;
  r.tas_kt = 300.0;
  r.cas_kt = 290.0;
  r.vn_fps = 300.0 * kKtToFps;
  r.nz_g = 1.0;
  r.fuel_lb = 5000.0;
  r.pla_pct = 75.0;
  return r;
}

int field_index(ReportField f) { return static_cast<int>(f); }

}  // namespace

TEST_CASE("healthy report passes with every field valid") {
  PositionReport r = healthy_report(1.0);
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK(v.valid);
  for (std::size_t i = 0; i < kReportFieldCount; ++i) CHECK(v.field_valid[i]);
}

TEST_CASE("timestamp must advance between accepted reports") {
  PositionReport prev = healthy_report(1.0);
  PositionReport r = healthy_report(1.0);  // equal is not after
  ValidationResult v = validate_report(r, &prev, {});
  CHECK_FALSE(v.valid);
  CHECK(v.failure == ValidationFailureKind::NonMonotonicTimestamp);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Timestamp)]);
  r.timestamp_s = 0.5;
  CHECK_FALSE(validate_report(r, &prev, {}).valid);
  r.timestamp_s = 1.1;
  CHECK(validate_report(r, &prev, {}).valid);
  r.timestamp_s = std::numeric_limits<double>::quiet_NaN();
  CHECK(validate_report(r, &prev, {}).failure ==
        ValidationFailureKind::NonMonotonicTimestamp);
}

TEST_CASE("position jump bound scales with the report interval") {
  // 600 kt for 0.1 s travels 101.2686 ft; anything farther is implausible.
  PositionReport prev = healthy_report(1.0);
  PositionReport r = healthy_report(1.1);
  r.n_ft = prev.n_ft + 101.0;
  CHECK(validate_report(r, &prev, {}).valid);
  r.n_ft = prev.n_ft + 101.2686 + 1e-6;
  ValidationResult v = validate_report(r, &prev, {});
  CHECK_FALSE(v.valid);
  CHECK(v.failure == ValidationFailureKind::InvalidPosition);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Position)]);
}

TEST_CASE("position plausibility: altitude band and finiteness") {
  PositionReport r = healthy_report(1.0);
  r.u_ft = -2000.0;
  CHECK(validate_report(r, nullptr, {}).failure == ValidationFailureKind::InvalidPosition);
  r.u_ft = 70000.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).valid);
  r.u_ft = std::numeric_limits<double>::infinity();
  CHECK_FALSE(validate_report(r, nullptr, {}).valid);
}

TEST_CASE("orientation angle, history, and rate checks") {
  PositionReport r = healthy_report(1.0);
  r.theta_deg = 91.0;
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK(v.failure == ValidationFailureKind::InvalidOrientation);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Orientation)]);

  PositionReport prev = healthy_report(1.0);
  PositionReport jump = healthy_report(1.1);
  jump.psi_deg = prev.psi_deg + 10.0;  // 100 deg/s against a 90 deg/s bound
  CHECK_FALSE(validate_report(jump, &prev, {}).valid);
  jump.psi_deg = prev.psi_deg + 8.0;
  CHECK(validate_report(jump, &prev, {}).valid);

  PositionReport rates = healthy_report(1.0);
  rates.phi_rate_dps = 95.0;
  ValidationResult vr = validate_report(rates, nullptr, {});
  CHECK(vr.failure == ValidationFailureKind::InvalidOrientation);
  CHECK_FALSE(vr.field_valid[field_index(ReportField::OrientationRates)]);
}

TEST_CASE("speed and velocity plausibility") {
  PositionReport r = healthy_report(1.0);
  r.tas_kt = 700.0;
  CHECK(validate_report(r, nullptr, {}).failure == ValidationFailureKind::InvalidVelocity);
  r = healthy_report(1.0);
  r.cas_kt = -1.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).valid);
  r = healthy_report(1.0);
  r.ve_fps = 600.0 * kKtToFps + 1.0;
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK(v.failure == ValidationFailureKind::InvalidVelocity);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Velocity)]);
}

TEST_CASE("acceleration, load factor, fuel, throttle, wind checks") {
  PositionReport r = healthy_report(1.0);
  r.ae_fps2 = 11.0 * kGravityFps2;
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK(v.failure == ValidationFailureKind::InvalidField);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Acceleration)]);

  r = healthy_report(1.0);
  r.nz_g = 12.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).field_valid[field_index(ReportField::NormalAccel)]);
  r = healthy_report(1.0);
  r.fuel_lb = -5.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).field_valid[field_index(ReportField::Fuel)]);
  r = healthy_report(1.0);
  r.pla_pct = 131.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).field_valid[field_index(ReportField::Pla)]);
  r = healthy_report(1.0);
  r.wind_e_fps = 250.0;
  CHECK_FALSE(validate_report(r, nullptr, {}).field_valid[field_index(ReportField::Wind)]);
}

TEST_CASE("sender-side invalid marks reject the report") {
  PositionReport r = healthy_report(1.0);
  r.sender_valid[field_index(ReportField::Fuel)] = false;
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK_FALSE(v.valid);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Fuel)]);
  CHECK(v.failure == ValidationFailureKind::InvalidField);
}

TEST_CASE("first failure wins the verdict, all failures are marked") {
  PositionReport r = healthy_report(1.0);
  r.u_ft = 70000.0;   // position failure, checked before velocity
  r.tas_kt = 900.0;   // velocity failure
  ValidationResult v = validate_report(r, nullptr, {});
  CHECK(v.failure == ValidationFailureKind::InvalidPosition);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Position)]);
  CHECK_FALSE(v.field_valid[field_index(ReportField::Tas)]);
}

TEST_CASE("contingency table is total and matches the shipped defaults") {
  ContingencyTable t = ContingencyTable::defaults();
  CHECK(select_contingency(ValidationFailureKind::ReportDropout, t) ==
        ContingencyPlan::MaintainCurrentPath);
  CHECK(select_contingency(ValidationFailureKind::NonMonotonicTimestamp, t) ==
        ContingencyPlan::TerminateToPilot);
  CHECK(select_contingency(ValidationFailureKind::InvalidPosition, t) ==
        ContingencyPlan::TerminateToPilot);
  CHECK(select_contingency(ValidationFailureKind::InvalidOrientation, t) ==
        ContingencyPlan::Loiter);
  CHECK(select_contingency(ValidationFailureKind::InvalidVelocity, t) ==
        ContingencyPlan::MaintainCurrentPath);
  CHECK(select_contingency(ValidationFailureKind::InvalidField, t) ==
        ContingencyPlan::MaintainCurrentPath);
}

TEST_CASE("horizontal separation ignores altitude") {
  AircraftState lead = make_state(0.0, 0.0, 10000.0, 0.0, 0.0, 300.0);
  AircraftState wing = make_state(300.0, 400.0, 8000.0, 0.0, 0.0, 300.0);
  CHECK(aisl_ft(lead, wing) == doctest::Approx(500.0));
}

TEST_CASE("aspect angle measures from the lead's tail ray") {
  // Lead heading east; directly astern is zero aspect.
  CHECK(aspect_angle_deg(0.0, 0.0, 0.0, -100.0, 0.0) == doctest::Approx(0.0));
  // Ninety degrees of aspect on either side of the tail.
  double right = aspect_angle_deg(0.0, 0.0, 0.0, 0.0, -100.0);
  double left = aspect_angle_deg(0.0, 0.0, 0.0, 0.0, 100.0);
  CHECK(std::fabs(right) == doctest::Approx(90.0));
  CHECK(std::fabs(left) == doctest::Approx(90.0));
  CHECK(right == doctest::Approx(-left));
  // Dead ahead is the +/-180 crease.
  CHECK(std::fabs(aspect_angle_deg(0.0, 0.0, 0.0, 100.0, 0.0)) == doctest::Approx(180.0));
  CHECK_THROWS_AS(aspect_angle_deg(0.0, 0.0, 0.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("enum names round-trip stable strings") {
  CHECK(std::string(validation_failure_name(ValidationFailureKind::ReportDropout)) ==
        "report_dropout");
  CHECK(std::string(contingency_plan_name(ContingencyPlan::Loiter)) == "loiter");
  CHECK(std::string(report_field_name(ReportField::OrientationRates)) == "orientation_rates");
}
