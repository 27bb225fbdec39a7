#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "stmm/geometry.hpp"
#include "stmm/numeric.hpp"

using namespace stmm;

namespace {
const IncidenceGeometry g30{deg_to_rad(30.0), 0.0, 100.0, 30e9};
}

TEST_CASE("wavevector norm is the wavenumber") {
  for (double th : {0.0, 0.3, 1.0, pi / 2})
    for (double ph : {0.0, 1.0, -2.0}) {
      const IncidenceGeometry g(th, ph, 10.0, 28e9);
      const auto k = wavevector(g);
      CHECK(std::hypot(k[0], k[1], k[2]) == doctest::Approx(two_pi / g.wavelength()).epsilon(1e-14));
    }
}

TEST_CASE("geometry rejects bad input") {
  CHECK_THROWS_AS(IncidenceGeometry(-0.1, 0.0, 1.0, 1e9), std::invalid_argument);
  CHECK_THROWS_AS(IncidenceGeometry(pi / 2 + 1e-9, 0.0, 1.0, 1e9), std::invalid_argument);
  CHECK_THROWS_AS(IncidenceGeometry(0.5, 0.0, 0.0, 1e9), std::invalid_argument);
  CHECK_THROWS_AS(IncidenceGeometry(0.5, 0.0, 1.0, -1e9), std::invalid_argument);
  StmmConfig s{0, 4};
  CHECK_THROWS(s.validate());
}

TEST_CASE("delays vanish at normal incidence") {
  const IncidenceGeometry g(pi / 2, 0.3, 100.0, 30e9);
  const StmmConfig s{100, 100};
  // cos(pi/2) rounds to 6e-17 in double precision.
  CHECK(std::abs(delay_step_x(g, s)) < 1e-15 * s.dx(g) / speed_of_light);
  CHECK(aperture_delay(g, s) < 1e-13 * s.dx(g) / speed_of_light);
}

TEST_CASE("delay step at quarter-wave spacing") {
  const StmmConfig s{100, 100};
  const double lambda = g30.wavelength();
  CHECK(delay_step_x(g30, s) == doctest::Approx(lambda / 4 * std::cos(deg_to_rad(30.0)) / speed_of_light));
  CHECK(delay_step_y(g30, s) == doctest::Approx(0.0));
  CHECK(aperture_delay(g30, s) == doctest::Approx(100 * delay_step_x(g30, s)));
  CHECK(meta_atom_delay(g30, s, 7, 3) == doctest::Approx(7 * delay_step_x(g30, s)));
}

TEST_CASE("aperture delay uses magnitudes") {
  const IncidenceGeometry g(deg_to_rad(40.0), deg_to_rad(135.0), 20.0, 30e9);
  const StmmConfig s{16, 12};
  CHECK(delay_step_x(g, s) < 0.0);
  CHECK(aperture_delay(g, s) ==
        doctest::Approx(16 * std::abs(delay_step_x(g, s)) + 12 * std::abs(delay_step_y(g, s))));
}

TEST_CASE("spatial phase is a separate path from the delay") {
  const IncidenceGeometry g(deg_to_rad(25.0), deg_to_rad(10.0), 50.0, 30e9);
  const StmmConfig s{32, 32, 0.004, 0.003};
  for (int q : {0, 5, 31})
    for (int v : {0, 7, 31}) {
      const double via_delay = 4 * pi * g.carrier() * meta_atom_delay(g, s, q, v);
      CHECK(spatial_phase(g, s, q, v) == doctest::Approx(via_delay).epsilon(1e-12));
      const double w = spatial_phase_wrapped(g, s, q, v);
      CHECK(w >= 0.0);
      CHECK(w < two_pi);
    }
}

TEST_CASE("architecture names parse back") {
  for (auto a : {Architecture::A, Architecture::B, Architecture::Uncompensated})
    CHECK(parse_architecture(to_string(a)) == a);
  CHECK_THROWS(parse_architecture("C"));
}
