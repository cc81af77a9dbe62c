#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rtasim/rng.hpp"
#include "rtasim/ssc.hpp"

using namespace rtasim;

namespace {

AircraftState at(double e, double n, double u, double psi = 0.0) {
  return make_state(e, n, u, psi, 0.0, 300.0);
}

// Dense-sampling oracle: walk every polyline segment in 0.1 ft steps and
// take the closest sampled point.
double dense_polyline_dist(const Vec3& p, const JetWashTrail& trail) {
  const auto& s = trail.samples();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    Vec3 a = s[i].pos_ft;
    Vec3 b = s[i + 1].pos_ft;
    double len = norm(b - a);
    int steps = std::max(1, static_cast<int>(std::ceil(len / 0.1)));
    for (int k = 0; k <= steps; ++k) {
      double t = static_cast<double>(k) / steps;
      best = std::min(best, norm(p - (a + t * (b - a))));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("nose clearance verdict across the derived crossover range") {
  SscConfig cfg;
  cfg.ll_ft = 25.0;
  cfg.fl_ft = 25.0;
  cfg.tnsc_ft = 50.0;
  AircraftState lead = at(0.0, 0.0, 10000.0);  // heading +E, tail ray -E
  // Directly astern (zero aspect): clearance flips where range equals
  // threshold plus both body lengths.
  double crossover = (cfg.tnsc_ft + cfg.ll_ft + cfg.fl_ft) / std::cos(0.0);
  CHECK(crossover == doctest::Approx(100.0));

  SscVerdict ok = check_tnsc(lead, at(-120.0, 0.0, 10000.0), cfg);
  CHECK_FALSE(ok.violated);
  CHECK(ok.value == doctest::Approx(70.0));

  SscVerdict bad = check_tnsc(lead, at(-90.0, 0.0, 10000.0), cfg);
  CHECK(bad.violated);
  CHECK(bad.value == doctest::Approx(40.0));

  // Both sides of the exact crossover; the threshold itself counts as unsafe.
  CHECK(check_tnsc(lead, at(-(crossover + 0.01), 0.0, 10000.0), cfg).violated == false);
  CHECK(check_tnsc(lead, at(-(crossover - 0.01), 0.0, 10000.0), cfg).violated == true);
  CHECK(check_tnsc(lead, at(-crossover, 0.0, 10000.0), cfg).violated == true);
}

TEST_CASE("nose clearance accounts for aspect angle") {
  SscConfig cfg;
  cfg.ll_ft = 25.0;
  cfg.fl_ft = 25.0;
  cfg.tnsc_ft = 50.0;
  AircraftState lead = at(0.0, 0.0, 10000.0);
  // 60 degrees off the tail: crossover range doubles.
  double theta = 60.0;
  double crossover = (cfg.tnsc_ft + cfg.ll_ft + cfg.fl_ft) / std::cos(deg2rad(theta));
  CHECK(crossover == doctest::Approx(200.0));
  auto wing_at_range = [&](double r) {
    // Bearing 180 + theta from the lead's heading puts the wingman at +theta
    // aspect.
    Vec3 d = r * heading_unit(180.0 + theta);
    return at(d.e, d.n, 10000.0);
  };
  CHECK_FALSE(check_tnsc(lead, wing_at_range(crossover + 0.01), cfg).violated);
  CHECK(check_tnsc(lead, wing_at_range(crossover - 0.01), cfg).violated);
  // Ahead of the three-nine line is always a violation inside the range.
  SscVerdict front = check_tnsc(lead, at(300.0, 10.0, 10000.0), cfg);
  CHECK(front.violated);
  // Beyond the check range nothing violates.
  CHECK_FALSE(check_tnsc(lead, at(600.0, 0.0, 10000.0), cfg).violated);
  // Coincident horizontal positions violate outright.
  CHECK(check_tnsc(lead, at(0.0, 0.0, 9000.0), cfg).violated);
}

TEST_CASE("altitude stack verdict inside the range only") {
  SscConfig cfg;
  AircraftState lead = at(0.0, 0.0, 10000.0);
  SscVerdict above = check_afsc(lead, at(-300.0, 0.0, 10050.0), cfg);
  CHECK(above.violated);
  CHECK(above.value == doctest::Approx(50.0));
  // Co-altitude and below are acceptable.
  CHECK_FALSE(check_afsc(lead, at(-300.0, 0.0, 10000.0), cfg).violated);
  CHECK_FALSE(check_afsc(lead, at(-300.0, 0.0, 9900.0), cfg).violated);
  // Above but outside the slant-range gate.
  CHECK_FALSE(check_afsc(lead, at(-600.0, 0.0, 10050.0), cfg).violated);
}

TEST_CASE("closure verdict gates on band and strict threshold") {
  SscConfig cfg;  // band [100, 300], limit 10 fps
  AircraftState lead = at(0.0, 0.0, 10000.0);
  AircraftState wing = at(-200.0, 0.0, 10000.0);
  // Range shrank from 200.3 to 200 over 0.02 s: closure 15 fps, in band.
  SfcVerdict hot = check_sfc(lead, wing, 200.3, 0.02, cfg);
  CHECK(hot.violated);
  CHECK(hot.closure_fps == doctest::Approx(15.0));
  // Exactly at the limit: acceptable (strictly-greater check).
  SfcVerdict edge = check_sfc(lead, wing, 200.0 + 10.0 * 0.02, 0.02, cfg);
  CHECK(edge.closure_fps == doctest::Approx(10.0));
  CHECK_FALSE(edge.violated);
  // Opening range never violates.
  CHECK_FALSE(check_sfc(lead, wing, 199.0, 0.02, cfg).violated);
  // Outside the band the same closure is acceptable.
  AircraftState close = at(-50.0, 0.0, 10000.0);
  CHECK_FALSE(check_sfc(lead, close, 50.3, 0.02, cfg).violated);
  AircraftState far = at(-400.0, 0.0, 10000.0);
  CHECK_FALSE(check_sfc(lead, far, 400.3, 0.02, cfg).violated);
}

TEST_CASE("point-to-segment distance closed form") {
  Vec3 a{0.0, 0.0, 0.0};
  Vec3 b{100.0, 0.0, 0.0};
  CHECK(point_segment_dist_ft({50.0, 30.0, 0.0}, a, b) == doctest::Approx(30.0));
  CHECK(point_segment_dist_ft({-40.0, 30.0, 0.0}, a, b) == doctest::Approx(50.0));
  CHECK(point_segment_dist_ft({130.0, 40.0, 0.0}, a, b) == doctest::Approx(50.0));
  // Degenerate segment falls back to point distance.
  CHECK(point_segment_dist_ft({3.0, 4.0, 0.0}, a, a) == doctest::Approx(5.0));
}

TEST_CASE("wash exclusion verdict against the trail") {
  SscConfig cfg;  // radius 50 ft, window 60 s
  JetWashTrail trail;
  // Straight trail along +E at 10000 ft.
  for (int i = 0; i <= 20; ++i) {
    trail.push(static_cast<double>(i), {i * 500.0, 0.0, 10000.0}, cfg);
  }
  SscVerdict inside = check_jec(trail, {3000.0, 10.0, 10000.0}, cfg);
  CHECK(inside.violated);
  CHECK(inside.value == doctest::Approx(10.0));
  // Sixty feet above the trail clears the three-dimensional radius.
  SscVerdict above = check_jec(trail, {3000.0, 0.0, 10060.0}, cfg);
  CHECK_FALSE(above.violated);
  CHECK(above.value == doctest::Approx(60.0));
  // Fewer than two samples can never violate.
  JetWashTrail fresh;
  fresh.push(0.0, {0.0, 0.0, 0.0}, cfg);
  CHECK_FALSE(check_jec(fresh, {0.0, 0.0, 0.0}, cfg).violated);
}

TEST_CASE("trail drops samples once they age past the window") {
  SscConfig cfg;
  cfg.jec_window_s = 10.0;
  JetWashTrail trail;
  for (int i = 0; i <= 30; ++i) trail.push(static_cast<double>(i), {i * 100.0, 0.0, 0.0}, cfg);
  // One sample older than the window survives so the polyline spans it.
  REQUIRE(trail.samples().size() >= 2);
  CHECK(trail.samples().front().t_s >= 30.0 - cfg.jec_window_s - 1.0);
  CHECK(trail.samples()[1].t_s > 30.0 - cfg.jec_window_s);
  CHECK(trail.samples().back().t_s == 30.0);
  trail.clear();
  CHECK(trail.samples().empty());
}

TEST_CASE("segment distance matches the dense-sampling oracle") {
  SscConfig cfg;
  CounterRng rng(1234ULL, 13ULL);
  JetWashTrail trail;
  // A wandering three-dimensional track.
  Vec3 p{0.0, 0.0, 10000.0};
  for (int i = 0; i < 40; ++i) {
    trail.push(static_cast<double>(i), p, cfg);
    p = p + Vec3{rng.uniform(-80.0, 120.0), rng.uniform(-100.0, 100.0), rng.uniform(-8.0, 8.0)};
  }
  for (int k = 0; k < 300; ++k) {
    Vec3 q{rng.uniform(-500.0, 4000.0), rng.uniform(-1000.0, 1000.0),
           rng.uniform(9900.0, 10100.0)};
    double exact = check_jec(trail, q, cfg).value;
    double dense = dense_polyline_dist(q, trail);
    CHECK(std::fabs(exact - dense) <= 0.1);
    CHECK(exact <= dense + 1e-9);
  }
}
