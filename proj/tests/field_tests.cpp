#include <cmath>
#include <random>

#include "doctest.h"

#include "darksim/field.hpp"

using darksim::SphericalField;
using darksim::complexd;

TEST_CASE("spherical_components preserves total power") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const complexd ex(u(rng), u(rng)), ey(u(rng), u(rng)), ez(u(rng), u(rng));
    const SphericalField f = darksim::spherical_components(ex, ey, ez);
    const double cart = std::norm(ex) + std::norm(ey) + std::norm(ez);
    CHECK(f.norm2() == doctest::Approx(cart).epsilon(1e-14));
  }
}

TEST_CASE("spherical_components axis cases") {
  const SphericalField z = darksim::spherical_components(0, 0, 1);
  CHECK(std::abs(z.e_zero - 1.0) < 1e-15);
  CHECK(std::abs(z.e_minus) < 1e-15);
  CHECK(std::abs(z.e_plus) < 1e-15);

  const SphericalField x = darksim::spherical_components(1, 0, 0);
  CHECK(std::abs(x.e_minus - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(x.e_plus + 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(x.e_zero) < 1e-15);

  // circular (x + i y)/sqrt(2) concentrates in a single component:
  // e_minus = (Ex - i Ey)/sqrt(2) = 1, e_plus = -(Ex + i Ey)/sqrt(2) = 0
  const complexd i01(0, 1);
  const SphericalField c = darksim::spherical_components(
      1.0 / std::sqrt(2.0), i01 / std::sqrt(2.0), 0);
  CHECK(std::abs(c.e_minus - 1.0) < 1e-15);
  CHECK(std::abs(c.e_plus) < 1e-15);
  CHECK(std::abs(c.e_zero) < 1e-15);
}

TEST_CASE("linear_polarization_at_angle") {
  const SphericalField along = darksim::linear_polarization_at_angle(0.0, 1.0);
  CHECK(std::abs(along.e_zero - 1.0) < 1e-15);
  CHECK(std::abs(along.e_minus) < 1e-15);

  const SphericalField perp =
      darksim::linear_polarization_at_angle(M_PI / 2.0, 2.0);
  CHECK(std::abs(perp.e_zero) < 1e-15);
  CHECK(std::abs(perp.e_minus - 2.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(perp.e_plus + 2.0 / std::sqrt(2.0)) < 1e-14);

  // the magic angle makes all three components equally strong
  const double magic = std::acos(1.0 / std::sqrt(3.0));
  const SphericalField eq = darksim::linear_polarization_at_angle(magic, 1.0);
  CHECK(std::abs(eq.e_minus) == doctest::Approx(std::abs(eq.e_zero)));
  CHECK(std::abs(eq.e_plus) == doctest::Approx(std::abs(eq.e_zero)));

  for (double th : {0.1, 0.8, 1.4, 2.9}) {
    CHECK(darksim::linear_polarization_at_angle(th, 0.7).norm() ==
          doctest::Approx(0.7).epsilon(1e-14));
  }
  CHECK_THROWS_AS(darksim::linear_polarization_at_angle(0.3, -1.0),
                  std::domain_error);
}

TEST_CASE("SphericalField component accessor and arithmetic") {
  SphericalField f;
  f.e_minus = complexd(1, 2);
  f.e_zero = complexd(3, 4);
  f.e_plus = complexd(5, 6);
  CHECK(f.component(-1) == complexd(1, 2));
  CHECK(f.component(0) == complexd(3, 4));
  CHECK(f.component(1) == complexd(5, 6));
  CHECK_THROWS_AS(f.component(2), std::domain_error);

  const SphericalField g = f * complexd(0, 1) + f;
  CHECK(g.e_zero == complexd(3, 4) * complexd(1, 1));
}
