#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stmm/experiments.hpp"
#include "stmm/numeric.hpp"
#include "stmm/parallel.hpp"
#include "stmm/scenario.hpp"

using namespace stmm;

namespace {

Scenario parse(const std::string& text) {
  std::istringstream is(text);
  return parse_scenario(is);
}

const char* full = R"([geometry]
theta_deg = 25
phi_deg = 0
distance_m = 80
carrier_hz = 28e9

[stmm]
m_ux = 64
m_uy = 32
spacing_x_m = 0.0021
architecture = B

[cpm]
h = 0.5
alphabet = 4
memory = 2
kappa = 0.015
psf = raised_cosine

[link]
n_master = 64
m_d = 32
siso_snr_db = -20
noise_power_w = 2e-12
mu = 0.3

[csi]
estimator = crlb
mc_samples = 5000
seed = 99
exact_phase = true

[sweep]
parameter = kappa
start = 0.001
stop = 0.05
points = 5
scale = log
outputs = af_sq_db, eta_u, csi_loss

[oracle]
oversampling = 20
symbols = 32
law = A
downlink = qpsk
noise = false
trials = 150
)";

}  // namespace

TEST_CASE("config round trip is exact") {
  const Scenario a = parse(full);
  CHECK(a.geometry.theta() == doctest::Approx(deg_to_rad(25.0)));
  CHECK(a.stmm.architecture == Architecture::B);
  CHECK(a.cpm.psf == PulseShape::RaisedCosine);
  CHECK(siso_snr(a.link, a.geometry) == doctest::Approx(0.01));
  const std::string text = serialize_scenario(a);
  const Scenario b = parse(text);
  CHECK(a == b);
  CHECK(serialize_scenario(b) == text);
  const Scenario d = parse(serialize_scenario(Scenario{}));
  CHECK(d == Scenario{});
}

TEST_CASE("resolution applies kappa and the derived band") {
  const Scenario r = parse(full).resolved();
  CHECK(kappa_of(r.cpm, r.geometry.carrier()) == doctest::Approx(0.015));
  CHECK(r.link.total_bandwidth == doctest::Approx(occupied_bandwidth(r.cpm).hz / 0.3));
  CHECK(r.csi.sigma_theta_sq > 0.0);
  CHECK_NOTHROW(r.validate());
}

TEST_CASE("bad configs raise ConfigError") {
  CHECK_THROWS_AS(parse("[geometry]\ntilt = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[optics]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[geometry]\ntheta_deg = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("[geometry]\ntheta_deg = 30\ntheta_rad = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[stmm]\narchitecture = C\n"), ConfigError);
  CHECK_THROWS_AS(parse("[geometry]\ntheta_deg = 120\n"), ConfigError);
  CHECK_THROWS_AS(parse("[link]\nmu = 1.5\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[stmm]\nm_ux = 0\n").validate(), ConfigError);
}

TEST_CASE("sweep validation") {
  SweepConfig s;
  s.parameter = "kappa";
  s.start = 0.01;
  s.stop = 0.01;
  s.outputs = {"af_sq_db"};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.stop = 0.02;
  CHECK_NOTHROW(s.validate());
  s.points = 1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.points = 3;
  s.outputs = {"phase_noise"};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.outputs = {"eta_u"};
  s.parameter = "mu";
  s.stop = 1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.parameter = "spin";
  CHECK_THROWS_AS(s.validate(), ConfigError);
  SweepConfig l{"distance", 10.0, 1000.0, 3, SweepScale::Log, {"eta_d"}};
  const auto g = l.grid();
  CHECK(g[1] == doctest::Approx(100.0));
  CHECK(g.back() == 1000.0);
}

TEST_CASE("theta sweep at zero kappa is flat") {
  Scenario sc;
  sc.kappa = std::nullopt;
  sc.cpm.h = 0.0;
  sc.link.tx_power = 1e6;
  sc.sweep = SweepConfig{"theta", 5.0, 90.0, 18, SweepScale::Linear, {"af_sq_db", "squint_deg"}};
  const auto t = run_sweep(sc, 1);
  CHECK(t.rows().size() == 18);
  for (double x : t.column("af_sq_db")) CHECK(x == 0.0);
  const auto th = t.column("theta");
  const auto sq = t.column("squint_deg");
  for (std::size_t i = 0; i < th.size(); ++i) CHECK(sq[i] == doctest::Approx(th[i]));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  Scenario sc = parse(full);
  sc.stmm.architecture = Architecture::A;
  set_thread_count(1);
  std::ostringstream a;
  run_sweep(sc, 5).write(a);
  set_thread_count(4);
  std::ostringstream b;
  run_sweep(sc, 5).write(b);
  set_thread_count(0);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("ci_halfwidth") != std::string::npos);
  std::ostringstream c;
  run_sweep(sc, 6).write(c);
  CHECK(c.str() != a.str());
}

TEST_CASE("with_parameter") {
  const Scenario sc;
  CHECK(with_parameter(sc, "theta", 45.0).geometry.theta() == doctest::Approx(pi / 4));
  CHECK(with_parameter(sc, "stmm_side", 64.0).stmm.m_uy == 64);
  CHECK(siso_snr(with_parameter(sc, "siso_snr", -10.0).link, sc.geometry) == doctest::Approx(0.1));
  CHECK(*with_parameter(sc, "kappa", 0.03).kappa == 0.03);
  CHECK_THROWS_AS(with_parameter(sc, "phase", 1.0), ConfigError);
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 8);
  CHECK(is_preset("fig10"));
  CHECK_FALSE(is_preset("fig11"));
  CHECK_THROWS_AS(run_preset("fig11", 1), std::invalid_argument);
  const auto f5 = run_preset("fig5", 1);
  CHECK(f5.files.size() == 4);
  for (const auto& [name, table] : f5.files) {
    CHECK(table.rows().size() == 121);
    for (double x : table.column("af_sq_db_compensated")) CHECK(x == 0.0);
  }
  CHECK(f5.plot_script.find("fig5_theta30_m200.csv") != std::string::npos);
}

TEST_CASE("csv numbers are shortest round trip") {
  CsvTable t({"a", "b"});
  t.add_numbers({0.1, 1.0 / 3.0});
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() == "a,b\n0.1,0.3333333333333333\n");
  CHECK_THROWS(t.add_numbers({1.0}));
}
