#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "frozen.hpp"
#include "stmm/capacity.hpp"

using namespace stmm;

TEST_CASE("spectral efficiency sums the split links") {
  const auto se = spectral_efficiency(15.0, 3.0, 0.25);
  CHECK(se.eta_d == doctest::Approx(0.75 * 4.0));
  CHECK(se.eta_u == doctest::Approx(0.25 * 2.0));
  CHECK(se.eta_total == doctest::Approx(3.5));
  CHECK(spectral_efficiency(1.0, 1.0, 0.0).degenerate);
  CHECK(spectral_efficiency(1.0, 1.0, 1.0).degenerate);
}

TEST_CASE("optimal split against frozen roots") {
  for (const auto& c : frozen::mu_cases) {
    const auto o = optimal_mu(c.snr_d, c.tilde_u);
    CHECK_FALSE(o.boundary);
    CHECK(o.mu == doctest::Approx(c.mu).epsilon(1e-9));
    CHECK(std::abs(o.derivative) < 1e-9);
  }
}

TEST_CASE("derivative matches a central difference") {
  for (double mu : {0.05, 0.3, 0.7, 0.95}) {
    const double h = 1e-6;
    const double fd = (eta_of_mu(20.0, 5.0, mu + h) - eta_of_mu(20.0, 5.0, mu - h)) / (2 * h);
    CHECK(deta_dmu(20.0, 5.0, mu) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("optimum beats a dense grid") {
  for (double sd : {0.5, 10.0, 300.0})
    for (double tu : {0.01, 1.0, 50.0}) {
      const auto o = optimal_mu(sd, tu);
      const double best = eta_of_mu(sd, tu, o.mu);
      for (int i = 0; i <= 2000; ++i) {
        const double mu = mu_lo + (mu_hi - mu_lo) * i / 2000.0;
        CHECK(eta_of_mu(sd, tu, mu) <= best + 1e-9);
      }
    }
}

TEST_CASE("strong uplink pushes the optimum to the boundary") {
  const auto o = optimal_mu(1.0, 1e4);
  CHECK(o.boundary);
  CHECK(o.mu == doctest::Approx(mu_hi));
}
