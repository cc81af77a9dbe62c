#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rtasim/vec.hpp"

using namespace rtasim;

TEST_CASE("vector algebra") {
  Vec3 a{1.0, 2.0, 3.0};
  Vec3 b{-4.0, 0.5, 2.0};
  CHECK(dot(a, b) == doctest::Approx(-4.0 + 1.0 + 6.0));
  Vec3 s = a + b;
  CHECK(s.e == doctest::Approx(-3.0));
  CHECK(s.n == doctest::Approx(2.5));
  CHECK(s.u == doctest::Approx(5.0));
  Vec3 d = a - b;
  CHECK(d.e == doctest::Approx(5.0));
  Vec3 m = 2.0 * a;
  CHECK(m.u == doctest::Approx(6.0));
  CHECK(norm(Vec3{3.0, 4.0, 12.0}) == doctest::Approx(13.0));
  CHECK(hnorm(Vec3{3.0, 4.0, 999.0}) == doctest::Approx(5.0));
}

TEST_CASE("unit_or_zero") {
  Vec3 u = unit_or_zero(Vec3{0.0, 0.0, 5.0});
  CHECK(u.u == doctest::Approx(1.0));
  Vec3 z = unit_or_zero(Vec3{0.0, 0.0, 0.0});
  CHECK(z.e == 0.0);
  CHECK(z.n == 0.0);
  CHECK(z.u == 0.0);
}

TEST_CASE("heading unit vector convention") {
  // psi = 0 points along +E, psi = 90 along +N.
  Vec3 e0 = heading_unit(0.0);
  CHECK(e0.e == doctest::Approx(1.0));
  CHECK(e0.n == doctest::Approx(0.0).epsilon(1e-12));
  Vec3 e90 = heading_unit(90.0);
  CHECK(e90.e == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e90.n == doctest::Approx(1.0));
  CHECK(e90.u == 0.0);
}

TEST_CASE("heading_of inverts heading_unit") {
  for (double psi = -179.0; psi <= 359.0; psi += 7.3) {
    Vec3 h = heading_unit(psi);
    double back = heading_of(h.e, h.n);
    CHECK(std::fabs(wrap180(back - psi)) < 1e-9);
  }
}

TEST_CASE("angle wrapping ranges") {
  CHECK(wrap180(180.0) == doctest::Approx(180.0));
  CHECK(wrap180(-180.0) == doctest::Approx(180.0));
  CHECK(wrap180(540.0) == doctest::Approx(180.0));
  CHECK(wrap180(-90.0) == doctest::Approx(-90.0));
  CHECK(wrap360(360.0) == doctest::Approx(0.0));
  CHECK(wrap360(-1.0) == doctest::Approx(359.0));
  CHECK(wrap360(725.0) == doctest::Approx(5.0));
}

TEST_CASE("unit conversions") {
  CHECK(kKtToFps == doctest::Approx(1.68781));
  CHECK(300.0 * kKtToFps == doctest::Approx(506.343));
  CHECK(deg2rad(180.0) == doctest::Approx(kPi));
  CHECK(rad2deg(kPi / 2.0) == doctest::Approx(90.0));
}
