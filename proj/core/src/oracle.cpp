#include "stmm/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <map>
#include <utility>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"
#include "stmm/parallel.hpp"
#include "stmm/reflection.hpp"
#include "stmm/rng.hpp"

namespace stmm {

std::string_view to_string(DownlinkWaveform w) {
  return w == DownlinkWaveform::ConstantEnvelope ? "constant" : "qpsk";
}

DownlinkWaveform parse_downlink_waveform(std::string_view s) {
  if (s == "constant" || s == "constant_envelope") return DownlinkWaveform::ConstantEnvelope;
  if (s == "qpsk" || s == "random_qpsk") return DownlinkWaveform::RandomQpskLike;
  throw std::invalid_argument("unknown downlink waveform '" + std::string(s) + "'");
}

namespace {

// B_u T_u used for sizing the sample grid. A Gaussian pulse without an
// energy factor is sized as the rectangular pulse of the same memory, whose
// spectrum is wider.
double sizing_epsilon(const CpmConfig& cpm) {
  if (cpm.g()) return occupied_bandwidth(cpm).epsilon;
  CpmConfig r = cpm;
  r.psf = PulseShape::Rectangular;
  r.energy_factor.reset();
  return occupied_bandwidth(r).epsilon;
}

}  // namespace

int WaveformScenario::samples_per_symbol() const {
  return static_cast<int>(std::ceil(oversampling * sizing_epsilon(cpm) - 1e-9));
}

double WaveformScenario::sample_rate() const { return samples_per_symbol() / cpm.symbol_time; }

int WaveformScenario::first_symbol() const {
  return static_cast<int>(std::ceil(aperture_delay(geometry, stmm) / cpm.symbol_time)) + 1;
}

std::size_t WaveformScenario::required_symbols() const {
  return static_cast<std::size_t>(first_symbol() + duration_symbols + 2);
}

double WaveformScenario::rho_sq() const {
  const double n = link.n_master;
  return n * n * std::norm(channel.xi.at(0)) / path_loss(geometry).rho_u;
}

void WaveformScenario::validate() const {
  stmm.validate();
  cpm.validate();
  link.validate();
  if (duration_symbols < 1) throw std::invalid_argument("record must span at least one symbol");
  if (channel.paths() != 1) throw std::invalid_argument("the oracle models a single path");
  const double fs = sample_rate();
  const double bu = sizing_epsilon(cpm) / cpm.symbol_time;
  if (fs < 16.0 * bu * (1.0 - 1e-12))
    throw std::invalid_argument("sample rate " + format_double(fs) + " Hz is below 16 B_u");
  if (downlink == DownlinkWaveform::RandomQpskLike && fs < 2.0 * link.downlink_bandwidth())
    throw std::invalid_argument("sample rate " + format_double(fs) + " Hz is below 2 B_d");
}

std::vector<double> fractional_delay_taps(double frac, int taps, double beta) {
  if (taps < 2 || taps % 2 != 0) throw std::invalid_argument("tap count must be even and >= 2");
  const int half = taps / 2;
  std::vector<double> w(taps);
  const double i0b = std::cyl_bessel_i(0.0, beta);
  double sum = 0.0;
  for (int i = 0; i < taps; ++i) {
    const int j = i - half + 1;
    const double x = frac - j;
    const double r = x / half;
    const double win = std::abs(r) < 1.0 ? std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) / i0b : 0.0;
    const double sinc = x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
    w[i] = sinc * win;
    sum += w[i];
  }
  for (auto& x : w) x /= sum;
  return w;
}

DownlinkSignal::DownlinkSignal(const WaveformScenario& sc, std::uint64_t seed)
    : amplitude_(std::sqrt(sc.link.tx_power)),
      qpsk_(sc.downlink == DownlinkWaveform::RandomQpskLike),
      rate_(sc.link.downlink_bandwidth()),
      seed_(seed) {}

std::complex<double> DownlinkSignal::symbol(long long m) const {
  CounterRng r = CounterRng(seed_).substream(static_cast<std::uint64_t>(m));
  const auto bits = r.next_u64();
  const double a = std::sqrt(0.5);
  return {(bits & 1) ? a : -a, (bits & 2) ? a : -a};
}

std::complex<double> DownlinkSignal::operator()(double s) const {
  if (!qpsk_) return amplitude_;
  const double x = s * rate_;
  const double m0 = std::floor(x);
  const auto w = fractional_delay_taps(x - m0);
  const int half = static_cast<int>(w.size()) / 2;
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * symbol(static_cast<long long>(m0) + static_cast<long long>(i) - half + 1);
  return amplitude_ * acc;
}

double RxRecord::time_of(std::size_t k) const { return start_time + static_cast<double>(k) / sample_rate; }

namespace {

struct AtomGroup {
  double dt;
  std::complex<double> carrier;  // exp(j(phi - 4 pi f_i dt))
  double weight;
};

// Atoms with bitwise-identical delay and spatial phase share every term, so
// they are merged; groups keep row-major first-occurrence order.
std::vector<AtomGroup> group_atoms(const WaveformScenario& sc, const std::vector<bool>& mask) {
  const auto& g = sc.geometry;
  const auto& s = sc.stmm;
  const double w = 4.0 * pi * g.carrier();
  std::vector<AtomGroup> groups;
  std::map<std::pair<double, double>, std::size_t> index;
  for (int q = 0; q < s.m_ux; ++q)
    for (int v = 0; v < s.m_uy; ++v) {
      const std::size_t flat = static_cast<std::size_t>(q) * s.m_uy + v;
      if (!mask.empty() && !mask[flat]) continue;
      const double dt = meta_atom_delay(g, s, q, v);
      const double phi = spatial_phase(g, s, q, v);
      const auto [it, fresh] = index.try_emplace({dt, phi}, groups.size());
      if (fresh)
        groups.push_back({dt, std::polar(1.0, phi - w * dt), 1.0});
      else
        groups[it->second].weight += 1.0;
    }
  return groups;
}

double stream_time(double base, long long j, double dt) { return base + (static_cast<double>(j) + 0.5) * dt; }

}  // namespace

RxRecord simulate_rx(const WaveformScenario& sc, const PhaseSignal& gamma, const SimOptions& opt) {
  sc.validate();
  const int sps = sc.samples_per_symbol();
  const double fs = sc.sample_rate();
  const double dt = 1.0 / fs;
  const int n0 = sc.first_symbol();
  const double base = n0 * sc.cpm.symbol_time;
  const std::size_t count = static_cast<std::size_t>(sc.duration_symbols) * sps + opt.extra_samples;

  RxRecord rec;
  rec.sample_rate = fs;
  rec.samples_per_symbol = sps;
  rec.first_symbol = n0;
  rec.tau = sc.geometry.tau();
  rec.start_time = stream_time(base, -static_cast<long long>(opt.input_delay_samples), dt);
  rec.samples.assign(count, {0.0, 0.0});

  const auto groups = group_atoms(sc, {});
  const DownlinkSignal sd(sc, opt.seed);
  const std::complex<double> rho = static_cast<double>(sc.link.n_master) * sc.channel.xi.at(0) / std::sqrt(path_loss(sc.geometry).rho_u);
  const double noise_var = sc.link.noise_density_master() * fs;
  const CounterRng noise_root(opt.seed ^ 0x5bd1e995ULL);
  const Architecture law = sc.law;

  parallel_for(count, [&](std::size_t k) {
    const long long j = static_cast<long long>(k) - opt.input_delay_samples;
    const double s = stream_time(base, j, dt);
    std::complex<double> y = 0.0;
    if (opt.signal) {
      thread_local std::vector<std::complex<double>> terms;
      terms.resize(groups.size());
      for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& a = groups[i];
        const double beta = temporal_phase_law(law, gamma, s - a.dt, a.dt, true);
        const std::complex<double> d = sd.constant_envelope() ? sd(0.0) : sd(s - 2.0 * a.dt);
        terms[i] = a.weight * a.carrier * std::polar(1.0, beta) * d;
      }
      y = rho * pairwise_sum<std::complex<double>>(terms);
    }
    if (opt.noise) {
      CounterRng r = noise_root.substream(static_cast<std::uint64_t>(k));
      y += r.complex_normal(noise_var);
    }
    rec.samples[k] = y;
  });
  return rec;
}

RxRecord simulate_rx(const WaveformScenario& sc, const SymbolStream& stream, std::uint64_t seed, bool noise) {
  if (stream.symbols.size() < sc.required_symbols())
    throw std::invalid_argument("symbol stream shorter than the record needs (" +
                                std::to_string(sc.required_symbols()) + " symbols)");
  const CpmSignal gamma(sc.cpm, stream);
  SimOptions opt;
  opt.seed = seed;
  opt.noise = noise;
  return simulate_rx(sc, gamma, opt);
}

namespace {

std::size_t window_start(const RxRecord& rec, double s_begin) {
  const double x = std::ceil((s_begin - rec.start_time) * rec.sample_rate);
  if (x < 0.0) throw std::domain_error("matched-filter window starts before the record");
  return static_cast<std::size_t>(x);
}

}  // namespace

double matched_filter_phase(const RxRecord& rec, const DownlinkSignal& sd, double tau, int n) {
  const double tu = rec.samples_per_symbol / rec.sample_rate;
  const double shift = tau - rec.tau;
  const std::size_t k0 = window_start(rec, n * tu + shift);
  const std::size_t k1 = k0 + rec.samples_per_symbol;
  if (k1 > rec.samples.size()) throw std::domain_error("matched-filter window ends after the record");
  std::vector<std::complex<double>> terms(rec.samples_per_symbol);
  for (std::size_t k = k0; k < k1; ++k) terms[k - k0] = rec.samples[k] * std::conj(sd(rec.time_of(k) - shift));
  return std::arg(pairwise_sum<std::complex<double>>(terms));
}

double empirical_gain(const RxRecord& rec, const WaveformScenario& sc) {
  std::vector<double> p(rec.samples.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(rec.samples[k]);
  const double mean = pairwise_sum<double>(p) / static_cast<double>(p.size());
  const double m = static_cast<double>(sc.stmm.m_u());
  return mean / (sc.rho_sq() * sc.link.tx_power * m * m);
}

SnrEstimate empirical_snr(const WaveformScenario& sc, const SymbolStream& stream, bool noise_on, int trials,
                          std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const CpmSignal gamma(sc.cpm, stream);
  SimOptions opt;
  opt.seed = seed;
  const RxRecord clean = simulate_rx(sc, gamma, opt);
  const DownlinkSignal sd(sc, seed);
  const int sps = clean.samples_per_symbol;
  const double dt = 1.0 / clean.sample_rate;
  const double tu = sc.cpm.symbol_time;
  const double sigma2 = sc.link.tx_power;
  const int windows = sc.duration_symbols;

  std::vector<double> sig(windows), coh(windows);
  for (int w = 0; w < windows; ++w) {
    std::vector<double> e(sps);
    std::vector<std::complex<double>> c(sps);
    for (int i = 0; i < sps; ++i) {
      const std::size_t k = static_cast<std::size_t>(w) * sps + i;
      const double s = clean.time_of(k);
      e[i] = std::norm(clean.samples[k]) * dt;
      c[i] = clean.samples[k] * std::polar(1.0, -gamma.phase(s)) * std::conj(sd(s)) * dt;
    }
    sig[w] = sigma2 * tu * pairwise_sum<double>(e);
    coh[w] = std::norm(pairwise_sum<std::complex<double>>(c));
  }
  SnrEstimate out;
  out.trials = trials;
  out.signal_power = pairwise_sum<double>(sig) / windows;
  const double coherent = pairwise_sum<double>(coh) / windows;

  const double analytic_noise = sc.link.noise_density_master() * sigma2 * tu;
  if (!noise_on) {
    out.noise_power = analytic_noise;
    out.value = out.signal_power / out.noise_power;
    out.coherent_value = coherent / out.noise_power;
    return out;
  }

  std::vector<double> per_trial(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    SimOptions o;
    o.seed = CounterRng(seed).substream(t + 1).next_u64();
    o.signal = false;
    o.noise = true;
    const RxRecord z = simulate_rx(sc, gamma, o);
    std::vector<double> acc(windows);
    for (int w = 0; w < windows; ++w) {
      std::vector<std::complex<double>> c(sps);
      for (int i = 0; i < sps; ++i) {
        const std::size_t k = static_cast<std::size_t>(w) * sps + i;
        c[i] = z.samples[k] * std::conj(sd(z.time_of(k))) * dt;
      }
      acc[w] = std::norm(pairwise_sum<std::complex<double>>(c));
    }
    per_trial[t] = pairwise_sum<double>(acc) / windows;
  });
  const double mean = pairwise_sum<double>(per_trial) / trials;
  double var = 0.0;
  for (double x : per_trial) var += (x - mean) * (x - mean);
  var /= std::max(1, trials - 1);
  out.noise_power = mean;
  out.value = out.signal_power / mean;
  out.coherent_value = coherent / mean;
  out.ci_halfwidth = out.value * 1.96 * std::sqrt(var / trials) / mean;
  return out;
}

std::vector<std::complex<double>> array_response(const WaveformScenario& sc, const PhaseSignal& gamma,
                                                 const std::vector<double>& times,
                                                 const std::vector<bool>& atom_mask) {
  if (!atom_mask.empty() && atom_mask.size() != static_cast<std::size_t>(sc.stmm.m_u()))
    throw std::invalid_argument("atom mask size does not match the aperture");
  const auto groups = group_atoms(sc, atom_mask);
  std::vector<std::complex<double>> out(times.size());
  std::vector<std::complex<double>> terms(groups.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double s = times[k];
    const double ref = gamma.phase(s);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const auto& a = groups[i];
      terms[i] = a.weight * a.carrier * std::polar(1.0, temporal_phase_law(sc.law, gamma, s - a.dt, a.dt, true) - ref);
    }
    out[k] = pairwise_sum<std::complex<double>>(terms);
  }
  return out;
}

}  // namespace stmm
