#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stmm/numeric.hpp"
#include "stmm/oracle.hpp"
#include "stmm/reflection.hpp"

using namespace stmm;

namespace {

WaveformScenario small(double theta_deg, double kappa, int side, Architecture law) {
  const IncidenceGeometry g(deg_to_rad(theta_deg), 0.0, 30.0, 30e9);
  CpmConfig c;
  c.h = 1.0;
  c.symbol_time = symbol_time_for_kappa(1.0, kappa, g.carrier());
  LinkConfig l;
  l.n_master = 8;
  l.m_d = 4;
  l.tx_power = 2.0;
  l.noise_power_master = 1e-9;
  l.mu = 0.5;
  l.total_bandwidth = occupied_bandwidth(c).hz / l.mu;
  WaveformScenario w{g, {side, side}, c, l, law};
  w.duration_symbols = 12;
  w.channel = ChannelRealization::deterministic(g);
  return w;
}

}  // namespace

TEST_CASE("sample grid sizing") {
  auto w = small(30.0, 0.01, 8, Architecture::Uncompensated);
  // eps = 2 for binary rectangular h = 1.
  CHECK(w.samples_per_symbol() == 32);
  CHECK(w.sample_rate() == doctest::Approx(32.0 / w.cpm.symbol_time));
  CHECK_NOTHROW(w.validate());
  w.oversampling = 8.0;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
  auto big = small(10.0, 0.2, 64, Architecture::B);
  CHECK(big.first_symbol() >= 2 + static_cast<int>(aperture_delay(big.geometry, big.stmm) / big.cpm.symbol_time));
}

TEST_CASE("oracle gain equals the closed form for a linear phase") {
  for (double th : {20.0, 45.0, 80.0})
    for (double k : {0.01, 0.05}) {
      const auto w = small(th, k, 12, Architecture::Uncompensated);
      const auto rec = simulate_rx(w, SymbolStream::constant(1, w.required_symbols()), 1);
      const double af = std::norm(array_factor_2d({w.geometry, w.stmm, k}));
      CHECK(empirical_gain(rec, w) == doctest::Approx(af).epsilon(1e-9));
    }
}

TEST_CASE("architecture A restores the full gain for random streams") {
  const auto w = small(20.0, 0.1, 16, Architecture::A);
  const auto rec = simulate_rx(w, SymbolStream::random(2, w.required_symbols(), 8), 1);
  CHECK(empirical_gain(rec, w) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bounded by the coherent sum") {
  for (auto law : {Architecture::B, Architecture::Uncompensated}) {
    const auto w = small(15.0, 0.2, 16, law);
    const auto rec = simulate_rx(w, SymbolStream::random(2, w.required_symbols(), 3), 1);
    const double m = static_cast<double>(w.stmm.m_u());
    const double peak = std::sqrt(w.rho_sq() * w.link.tx_power) * m;
    for (const auto& y : rec.samples) CHECK(std::abs(y) <= peak * (1 + 1e-9));
  }
}

TEST_CASE("shift equivariance is bit exact") {
  auto w = small(30.0, 0.03, 8, Architecture::B);
  w.downlink = DownlinkWaveform::RandomQpskLike;
  const CpmSignal gamma(w.cpm, SymbolStream::random(2, w.required_symbols() + 4, 5));
  SimOptions a;
  a.seed = 2;
  SimOptions b = a;
  b.input_delay_samples = 7;
  b.extra_samples = 7;
  const auto ra = simulate_rx(w, gamma, a);
  const auto rb = simulate_rx(w, gamma, b);
  for (std::size_t k = 0; k < ra.samples.size(); ++k) CHECK(rb.samples[k + 7] == ra.samples[k]);
  CHECK(rb.start_time + 7.0 / rb.sample_rate == doctest::Approx(ra.start_time));
}

TEST_CASE("noise has density N0") {
  const auto w = small(30.0, 0.01, 4, Architecture::A);
  const CpmSignal gamma(w.cpm, SymbolStream::constant(1, w.required_symbols()));
  SimOptions o;
  o.signal = false;
  o.noise = true;
  o.seed = 11;
  const auto rec = simulate_rx(w, gamma, o);
  double p = 0.0;
  for (const auto& y : rec.samples) p += std::norm(y);
  p /= static_cast<double>(rec.samples.size());
  CHECK(p == doctest::Approx(w.link.noise_density_master() * w.sample_rate()).epsilon(0.1));
}

TEST_CASE("noiseless SNR equals the analytic uplink SNR") {
  for (auto law : {Architecture::A, Architecture::Uncompensated}) {
    const auto w = small(40.0, 0.02, 10, law);
    const auto st = SymbolStream::constant(1, w.required_symbols());
    const auto e = empirical_snr(w, st, false, 1);
    const double af = law == Architecture::A ? 1.0 : std::norm(array_factor_2d({w.geometry, w.stmm, 0.02}));
    const double ref = snr_uplink(w.link, w.geometry, w.stmm, w.cpm, af).snr;
    CHECK(e.value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(e.coherent_value == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("measured noise agrees with the analytic level") {
  const auto w = small(40.0, 0.02, 6, Architecture::A);
  const auto st = SymbolStream::random(2, w.required_symbols(), 4);
  const auto e = empirical_snr(w, st, true, 100, 9);
  const double ref = snr_uplink(w.link, w.geometry, w.stmm, w.cpm, 1.0).snr;
  CHECK(std::abs(e.value - ref) < 2.0 * e.ci_halfwidth + 0.05 * ref);
}

TEST_CASE("fractional delay taps") {
  for (double f : {0.0, 0.25, 0.5, 0.99}) {
    const auto w = fractional_delay_taps(f);
    CHECK(w.size() == 32);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto z = fractional_delay_taps(0.0);
  CHECK(z[15] == doctest::Approx(1.0));
  CHECK(std::abs(z[16]) < 1e-15);
  CHECK_THROWS(fractional_delay_taps(0.5, 31));
}

TEST_CASE("QPSK downlink is a pure function of seed and time") {
  auto w = small(30.0, 0.01, 4, Architecture::A);
  w.downlink = DownlinkWaveform::RandomQpskLike;
  const DownlinkSignal a(w, 5), b(w, 5), c(w, 6);
  const double rate = w.link.downlink_bandwidth();
  double p = 0.0;
  for (int m = 0; m < 2000; ++m) {
    const double s = (m + 0.37) / rate;
    CHECK(a(s) == b(s));
    p += std::norm(a(s));
  }
  CHECK(p / 2000 == doctest::Approx(w.link.tx_power).epsilon(0.1));
  CHECK(std::norm(a(3.0 / rate)) == doctest::Approx(w.link.tx_power).epsilon(1e-12));
  CHECK(a(1.5 / rate) != c(1.5 / rate));
}

TEST_CASE("array response and masks") {
  const auto w = small(30.0, 0.05, 6, Architecture::A);
  const CpmSignal gamma(w.cpm, SymbolStream::random(2, w.required_symbols(), 1));
  const double t0 = w.first_symbol() * w.cpm.symbol_time;
  const std::vector<double> times{t0, t0 + 0.3 * w.cpm.symbol_time};
  for (const auto& g : array_response(w, gamma, times)) CHECK(std::abs(g) == doctest::Approx(36.0));
  std::vector<bool> mask(36, false);
  mask[0] = mask[7] = true;
  for (const auto& g : array_response(w, gamma, times, mask)) CHECK(std::abs(g) == doctest::Approx(2.0));
  CHECK_THROWS(array_response(w, gamma, times, std::vector<bool>(5, true)));
}

TEST_CASE("short stream is rejected") {
  const auto w = small(30.0, 0.05, 6, Architecture::A);
  CHECK_THROWS_AS(simulate_rx(w, SymbolStream::constant(1, 3), 1), std::invalid_argument);
}

TEST_CASE("IQ record round trip") {
  auto w = small(30.0, 0.02, 4, Architecture::Uncompensated);
  const auto rec = simulate_rx(w, SymbolStream::random(2, w.required_symbols(), 2), 4, true);
  const auto path = std::filesystem::temp_directory_path() / "stmm_iq_roundtrip.iq";
  write_iq(path, rec);
  CHECK(std::filesystem::file_size(path) == 64 + 16 * rec.samples.size());
  std::ifstream is(path, std::ios::binary);
  std::string header(64, '\0');
  is.read(header.data(), 64);
  CHECK(header.rfind("STMMIQ v1 ", 0) == 0);
  CHECK(header[63] == '\n');
  const auto back = read_iq(path);
  CHECK(back.sample_rate == rec.sample_rate);
  REQUIRE(back.samples.size() == rec.samples.size());
  for (std::size_t k = 0; k < rec.samples.size(); ++k) CHECK(back.samples[k] == rec.samples[k]);
  {
    std::ofstream bad(path, std::ios::binary);
    bad << "NOTIQ";
  }
  CHECK_THROWS(read_iq(path));
  std::filesystem::remove(path);
}
