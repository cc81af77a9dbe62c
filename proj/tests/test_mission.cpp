#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rtasim/dynamics.hpp"
#include "rtasim/mission.hpp"

using namespace rtasim;

namespace {

PositionReport lead_report(double e, double n, double u, double psi, double tas_kt = 300.0) {
  PositionReport r;
  r.timestamp_s = 1.0;
  r.e_ft = e;
  r.n_ft = n;
  r.u_ft = u;
  r.psi_deg = psi;
  r.tas_kt = tas_kt;
  r.vn_fps = tas_kt * kKtToFps;
  r.fuel_lb = 5000.0;
  r.pla_pct = 75.0;
  return r;
}

}  // namespace

TEST_CASE("slot position pivots on the lead tail ray") {
  RejoinSpec spec;
  spec.rho_r_ft = 500.0;
  // Lead heading +E: zero aspect puts the slot dead astern.
  spec.theta_aa_deg = 0.0;
  Vec3 p0 = rejoin_point(0.0, 0.0, 10000.0, 0.0, spec);
  CHECK(p0.e == doctest::Approx(-500.0));
  CHECK(p0.n == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p0.u == doctest::Approx(10000.0));
  // Ninety degrees of aspect swings the slot to bearing 270.
  spec.theta_aa_deg = 90.0;
  Vec3 p90 = rejoin_point(0.0, 0.0, 10000.0, 0.0, spec);
  CHECK(p90.e == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p90.n == doctest::Approx(-500.0));
  // The slot rides the lead position and heading.
  spec.theta_aa_deg = 0.0;
  Vec3 moved = rejoin_point(1000.0, 2000.0, 9000.0, 90.0, spec);
  CHECK(moved.e == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(moved.n == doctest::Approx(1500.0));
  CHECK(moved.u == doctest::Approx(9000.0));
  // Slot range from the lead is always rho_r.
  for (double theta : {-135.0, -45.0, 30.0, 170.0}) {
    spec.theta_aa_deg = theta;
    Vec3 p = rejoin_point(500.0, -200.0, 8000.0, 77.0, spec);
    CHECK(std::hypot(p.e - 500.0, p.n + 200.0) == doctest::Approx(spec.rho_r_ft));
  }
}

TEST_CASE("slot aspect angle equals the commanded aspect") {
  RejoinSpec spec;
  spec.rho_r_ft = 800.0;
  for (double theta : {-120.0, -60.0, 0.0, 45.0, 89.0}) {
    spec.theta_aa_deg = theta;
    Vec3 p = rejoin_point(0.0, 0.0, 10000.0, 33.0, spec);
    CHECK(aspect_angle_deg(0.0, 0.0, 33.0, p.e, p.n) == doctest::Approx(theta).epsilon(1e-9));
  }
}

TEST_CASE("dwell timer requires continuous residence and latches") {
  RejoinSpec spec;  // capture 100 ft, dwell 10 s
  RejoinTimer t;
  Vec3 slot{0.0, 0.0, 10000.0};
  // 9.98 s inside: not yet.
  for (int i = 0; i < 499; ++i) update_success(t, {50.0, 0.0, 10000.0}, slot, spec, 0.02);
  CHECK_FALSE(t.succeeded);
  CHECK(t.t_inside_s == doctest::Approx(9.98));
  // One excursion resets the clock.
  update_success(t, {200.0, 0.0, 10000.0}, slot, spec, 0.02);
  CHECK(t.t_inside_s == 0.0);
  CHECK(t.dist_ft == doctest::Approx(200.0));
  // Full dwell succeeds and latches through later excursions.
  for (int i = 0; i < 502; ++i) update_success(t, {0.0, 99.0, 10000.0}, slot, spec, 0.02);
  CHECK(t.succeeded);
  update_success(t, {5000.0, 0.0, 10000.0}, slot, spec, 0.02);
  CHECK(t.succeeded);
  // The capture boundary itself counts as inside.
  RejoinTimer edge;
  update_success(edge, {100.0, 0.0, 10000.0}, slot, spec, 0.02);
  CHECK(edge.t_inside_s == doctest::Approx(0.02));
}

TEST_CASE("slot-capture policy closes on the slot and feeds forward") {
  RejoinSpec spec;
  ControlBox box;
  AircraftState wing = make_state(-3000.0, -1000.0, 9500.0, 90.0, 0.0, 300.0);
  PositionReport lead = lead_report(0.0, 0.0, 10000.0, 90.0);
  PolicyInput in{wing, lead, spec, box};
  auto policy = make_policy("rejoin");
  Vec3 u = policy->desired_velocity(in);
  Vec3 slot = rejoin_point(lead, spec);
  // The command must make progress toward the slot from here.
  Vec3 err = slot - position(wing);
  CHECK(dot(u, unit_or_zero(err)) > 0.0);
  CHECK(u.u > 0.0);  // slot is above
  CHECK(box.contains(u));
  // Exactly in the slot, co-speed: pure feedforward along the lead heading.
  AircraftState parked = make_state(slot.e, slot.n, slot.u, 90.0, 0.0, 300.0);
  PolicyInput in2{parked, lead, spec, box};
  Vec3 hold = policy->desired_velocity(in2);
  CHECK(hold.e == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(hold.n == doctest::Approx(300.0 * kKtToFps));
  CHECK(hold.u == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("slot-capture feedforward uses the co-rotation speed in a turn") {
  RejoinSpec spec;
  spec.rho_r_ft = 500.0;  // wing parked exactly in the slot: no correction term
  ControlBox box;
  PositionReport lead = lead_report(0.0, 0.0, 10000.0, 90.0);
  lead.phi_deg = 30.0;
  // Wingman at +60 aspect, 500 ft: the canonical slower-inside case.
  Vec3 dir = heading_unit(90.0 + 180.0 + 60.0);
  AircraftState wing =
      make_state(500.0 * dir.e, 500.0 * dir.n, 10000.0, 90.0, 0.0, 290.0);
  PolicyInput in{wing, lead, spec, box};
  Vec3 u = make_policy("rejoin")->desired_velocity(in);
  double ff_along_lead = dot(u, heading_unit(90.0));
  // Feedforward magnitude reflects the 290.6 kt slot speed, not 300 kt.
  CHECK(ff_along_lead < 300.0 * kKtToFps);
  CHECK(ff_along_lead > 280.0 * kKtToFps);
}

TEST_CASE("charge policy runs straight at the lead flat out") {
  RejoinSpec spec;
  ControlBox box;
  AircraftState wing = make_state(0.0, 0.0, 10000.0, 0.0, 0.0, 300.0);
  PositionReport lead = lead_report(5000.0, 0.0, 10000.0, 0.0);
  PolicyInput in{wing, lead, spec, box};
  Vec3 u = make_policy("charge_lead")->desired_velocity(in);
  CHECK(u.e == doctest::Approx(box.e_max_fps));
  CHECK(u.n == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("hold policy keeps the current velocity inside the box") {
  RejoinSpec spec;
  ControlBox box;
  AircraftState wing = make_state(0.0, 0.0, 10000.0, 45.0, 0.0, 300.0);
  PositionReport lead = lead_report(5000.0, 0.0, 10000.0, 0.0);
  PolicyInput in{wing, lead, spec, box};
  Vec3 u = make_policy("hold")->desired_velocity(in);
  CHECK(u.e == doctest::Approx(wing.ve_fps));
  CHECK(u.n == doctest::Approx(wing.vn_fps));
}

TEST_CASE("adversarial policy is a pure function of seed and frame") {
  RejoinSpec spec;
  ControlBox box;
  GeofenceSpec fence;
  fence.kind = GeofenceSpec::Kind::Circle;
  fence.radius_ft = 30000.0;
  AircraftState wing = make_state(100.0, -50.0, 10000.0, 10.0, 0.0, 300.0);
  PositionReport lead = lead_report(4000.0, 100.0, 10000.0, 0.0);
  auto policy = make_policy("adversarial_random");
  bool any_diff = false;
  for (std::uint64_t frame : {0ULL, 37ULL, 100ULL, 250ULL, 999ULL}) {
    PolicyInput a{wing, lead, spec, box, &fence, 11ULL, frame};
    PolicyInput b{wing, lead, spec, box, &fence, 11ULL, frame};
    Vec3 ua = policy->desired_velocity(a);
    Vec3 ub = policy->desired_velocity(b);
    CHECK(ua.e == ub.e);
    CHECK(ua.n == ub.n);
    CHECK(ua.u == ub.u);
    PolicyInput c{wing, lead, spec, box, &fence, 12ULL, frame};
    Vec3 uc = policy->desired_velocity(c);
    if (norm(uc - ua) > 1e-9) any_diff = true;
    CHECK(box.contains(ua, 1e-9));
  }
  CHECK(any_diff);
}

TEST_CASE("policy ids are total over the published set") {
  for (const char* id : {"rejoin", "charge_lead", "adversarial_random", "hold"}) {
    auto p = make_policy(id);
    CHECK(std::string(p->name()) == id);
  }
  CHECK_THROWS_AS(make_policy("warp_speed"), std::invalid_argument);
}
