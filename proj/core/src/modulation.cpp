#include "stmm/modulation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"
#include "stmm/rng.hpp"

namespace stmm {

std::string_view to_string(PulseShape p) {
  switch (p) {
    case PulseShape::Rectangular: return "rectangular";
    case PulseShape::RaisedCosine: return "raised_cosine";
    case PulseShape::Gaussian: return "gaussian";
  }
  return "?";
}

PulseShape parse_pulse_shape(std::string_view s) {
  if (s == "rectangular" || s == "rect" || s == "lrec") return PulseShape::Rectangular;
  if (s == "raised_cosine" || s == "rc" || s == "lrc") return PulseShape::RaisedCosine;
  if (s == "gaussian" || s == "gmsk") return PulseShape::Gaussian;
  throw std::invalid_argument("unknown pulse shape '" + std::string(s) + "'");
}

void CpmConfig::validate() const {
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::invalid_argument("modulation index must be >= 0");
  if (alphabet_m < 2 || (alphabet_m & (alphabet_m - 1)) != 0)
    throw std::invalid_argument("alphabet size must be a power of two >= 2");
  if (memory_l < 1) throw std::invalid_argument("pulse memory must be >= 1");
  if (!(symbol_time > 0.0) || !std::isfinite(symbol_time)) throw std::invalid_argument("symbol time must be positive");
  if (energy_factor && !(*energy_factor > 0.0)) throw std::invalid_argument("energy factor must be positive");
  if (psf == PulseShape::Gaussian && !(gaussian_bt > 0.0)) throw std::invalid_argument("gaussian BT must be positive");
}

std::optional<double> CpmConfig::g() const {
  if (energy_factor) return energy_factor;
  switch (psf) {
    case PulseShape::Rectangular: return 1.0;
    case PulseShape::RaisedCosine: return 1.5;
    case PulseShape::Gaussian: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

// FFTW planning is not re-entrant.
std::mutex fftw_plan_mu;

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }
double npdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(two_pi); }
// Antiderivative of Q.
double qint(double x) { return x * qfunc(x) - npdf(x); }

struct GaussPulse {
  double a, half_t, centre, r0, scale;
  explicit GaussPulse(const CpmConfig& c) {
    const double t = c.symbol_time;
    a = two_pi * (c.gaussian_bt / t) / std::sqrt(std::log(2.0));
    half_t = 0.5 * t;
    centre = 0.5 * c.memory_l * t;
    r0 = raw_q(0.0);
    scale = 0.5 / (raw_q(c.memory_l * t) - r0);
  }
  double raw_p(double t) const {
    const double u = t - centre;
    return (qfunc(a * (u - half_t)) - qfunc(a * (u + half_t))) / (4.0 * half_t);
  }
  double raw_q(double t) const {
    const double u = t - centre;
    return (qint(a * (u - half_t)) - qint(a * (u + half_t))) / (4.0 * half_t * a);
  }
  double p(double t) const { return scale * raw_p(t); }
  double q(double t) const { return scale * (raw_q(t) - r0); }
};

}  // namespace

double frequency_pulse(const CpmConfig& cfg, double t) {
  const double lt = cfg.memory_l * cfg.symbol_time;
  if (t < 0.0 || t >= lt) return 0.0;
  switch (cfg.psf) {
    case PulseShape::Rectangular: return 1.0 / (2.0 * lt);
    case PulseShape::RaisedCosine: return (1.0 - std::cos(two_pi * t / lt)) / (2.0 * lt);
    case PulseShape::Gaussian: return GaussPulse(cfg).p(t);
  }
  return 0.0;
}

double phase_pulse(const CpmConfig& cfg, double t) {
  const double lt = cfg.memory_l * cfg.symbol_time;
  if (t <= 0.0) return 0.0;
  if (t >= lt) return 0.5;
  switch (cfg.psf) {
    case PulseShape::Rectangular: return t / (2.0 * lt);
    case PulseShape::RaisedCosine: return t / (2.0 * lt) - std::sin(two_pi * t / lt) / (4.0 * pi);
    case PulseShape::Gaussian: return GaussPulse(cfg).q(t);
  }
  return 0.0;
}

SymbolStream SymbolStream::random(int alphabet_m, std::size_t n, std::uint64_t seed) {
  SymbolStream s;
  s.seed = seed;
  s.symbols.resize(n);
  CounterRng rng(seed);
  for (auto& z : s.symbols) z = 2 * static_cast<int>(rng.below(alphabet_m)) - (alphabet_m - 1);
  return s;
}

SymbolStream SymbolStream::constant(int z, std::size_t n) {
  SymbolStream s;
  s.symbols.assign(n, z);
  return s;
}

void SymbolStream::validate(int alphabet_m) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const int z = symbols[i];
    if (z % 2 == 0 || std::abs(z) > alphabet_m - 1)
      throw std::invalid_argument("symbol " + std::to_string(z) + " at position " + std::to_string(i) +
                                  " is not an odd level within +-(M-1)");
  }
}

void SymbolStream::write_text(std::ostream& os) const {
  os << "# seed " << seed << '\n';
  for (int z : symbols) os << z << '\n';
}

SymbolStream SymbolStream::read_text(std::istream& is) {
  SymbolStream s;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream c(line.substr(hash + 1));
      std::string word;
      if (c >> word && word == "seed") c >> s.seed;
      line.resize(hash);
    }
    std::istringstream ls(line);
    int z;
    if (ls >> z) {
      s.symbols.push_back(z);
      std::string rest;
      if (ls >> rest) throw std::invalid_argument("trailing text on symbol line " + std::to_string(lineno));
    } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw std::invalid_argument("bad symbol on line " + std::to_string(lineno));
    }
  }
  return s;
}

CpmSignal::CpmSignal(CpmConfig cfg, SymbolStream stream) : cfg_(cfg), stream_(std::move(stream)) {
  cfg_.validate();
  stream_.validate(cfg_.alphabet_m);
  prefix_.resize(stream_.symbols.size() + 1, 0);
  for (std::size_t i = 0; i < stream_.symbols.size(); ++i) prefix_[i + 1] = prefix_[i] + stream_.symbols[i];
}

double CpmSignal::support_end() const { return static_cast<double>(stream_.symbols.size()) * cfg_.symbol_time; }

void CpmSignal::check(double t) const {
  if (!(t >= 0.0 && t <= support_end()))
    throw std::domain_error("time " + format_double(t) + " s outside the symbol stream support");
}

double CpmSignal::phase(double t) const {
  if (stream_.symbols.empty()) return 0.0;
  check(t);
  const long long n = static_cast<long long>(stream_.symbols.size());
  const double tt = cfg_.symbol_time;
  const long long k = std::min<long long>(static_cast<long long>(std::floor(t / tt)), n);
  const long long first = std::max<long long>(0, k - cfg_.memory_l + 1);
  double partial = 0.0;
  for (long long i = first; i <= std::min(k, n - 1); ++i)
    partial += stream_.symbols[i] * phase_pulse(cfg_, t - static_cast<double>(i) * tt);
  return two_pi * cfg_.h * (0.5 * static_cast<double>(prefix_[std::min(first, n)]) + partial);
}

PhaseRate CpmSignal::rate(double t) const {
  if (stream_.symbols.empty()) return {};
  check(t);
  const long long n = static_cast<long long>(stream_.symbols.size());
  const double tt = cfg_.symbol_time;
  const long long k = std::min<long long>(static_cast<long long>(std::floor(t / tt)), n);
  const long long first = std::max<long long>(0, k - cfg_.memory_l + 1);
  double sum = 0.0;
  for (long long i = first; i <= std::min(k, n - 1); ++i)
    sum += stream_.symbols[i] * frequency_pulse(cfg_, t - static_cast<double>(i) * tt);
  PhaseRate r{two_pi * cfg_.h * sum, false};
  if (cfg_.psf != PulseShape::RaisedCosine) {
    const double x = t / tt;
    r.one_sided = std::abs(x - std::nearbyint(x)) <= 1e-12 * std::max(1.0, std::abs(x));
  }
  return r;
}

double gamma(const CpmConfig& cfg, const SymbolStream& stream, double t) { return CpmSignal(cfg, stream).phase(t); }

PhaseRate gamma_derivative(const CpmConfig& cfg, const SymbolStream& stream, double t) {
  return CpmSignal(cfg, stream).rate(t);
}

Bandwidth occupied_bandwidth(const CpmConfig& cfg) {
  cfg.validate();
  const auto g = cfg.g();
  if (!g) throw std::invalid_argument("gaussian pulse needs an explicit energy factor for the bandwidth formula");
  const double m = cfg.alphabet_m;
  const double l = cfg.memory_l;
  const double t = cfg.symbol_time;
  const double b = (cfg.h / t) * std::sqrt(*g * (m * m - 1.0) / (3.0 * l)) + *g / (t * l);
  return {b, b * t};
}

double kappa_of(const CpmConfig& cfg, double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier must be positive");
  return cfg.h / (2.0 * cfg.symbol_time * carrier_hz);
}

double symbol_time_for_kappa(double h, double kappa, double carrier_hz) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive to fix a symbol time");
  return h / (2.0 * kappa * carrier_hz);
}

PowerSpectrum welch_psd(const CpmConfig& cfg, const SymbolStream& stream, int samples_per_symbol,
                        int segment_symbols) {
  if (samples_per_symbol < 2 || segment_symbols < 1) throw std::invalid_argument("bad Welch parameters");
  const CpmSignal sig(cfg, stream);
  const std::size_t seg = static_cast<std::size_t>(samples_per_symbol) * segment_symbols;
  const std::size_t total = stream.symbols.size() * static_cast<std::size_t>(samples_per_symbol);
  if (total < seg) throw std::invalid_argument("stream shorter than one Welch segment");

  std::vector<std::complex<double>> x(total);
  const double dt = cfg.symbol_time / samples_per_symbol;
  for (std::size_t k = 0; k < total; ++k) x[k] = std::polar(1.0, sig.phase((static_cast<double>(k) + 0.5) * dt));

  std::vector<double> win(seg);
  for (std::size_t i = 0; i < seg; ++i) win[i] = 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) / seg);

  std::vector<std::complex<double>> buf(seg);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_plan_mu);
    plan = fftw_plan_dft_1d(static_cast<int>(seg), reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  std::vector<double> acc(seg, 0.0);
  for (std::size_t start = 0; start + seg <= total; start += seg / 2) {
    for (std::size_t i = 0; i < seg; ++i) buf[i] = x[start + i] * win[i];
    fftw_execute(plan);
    for (std::size_t i = 0; i < seg; ++i) acc[i] += std::norm(buf[i]);
  }
  {
    std::lock_guard lock(fftw_plan_mu);
    fftw_destroy_plan(plan);
  }

  PowerSpectrum out;
  out.freq_hz.resize(seg);
  out.power.resize(seg);
  const double fs = samples_per_symbol / cfg.symbol_time;
  const double sum = std::accumulate(acc.begin(), acc.end(), 0.0);
  for (std::size_t i = 0; i < seg; ++i) {
    const std::size_t src = (i + seg / 2 + seg % 2) % seg;
    const long long bin = static_cast<long long>(i) - static_cast<long long>(seg / 2);
    out.freq_hz[i] = static_cast<double>(bin) * fs / static_cast<double>(seg);
    out.power[i] = acc[src] / sum;
  }
  return out;
}

double energy_bandwidth(const PowerSpectrum& psd, double fraction) {
  if (psd.freq_hz.empty()) return 0.0;
  std::vector<std::size_t> idx(psd.freq_hz.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(psd.freq_hz[a]) < std::abs(psd.freq_hz[b]); });
  const double total = std::accumulate(psd.power.begin(), psd.power.end(), 0.0);
  double acc = 0.0;
  double prev_f = 0.0;
  std::size_t i = 0;
  while (i < idx.size()) {
    // Bins at +f and -f enter together.
    const double f = std::abs(psd.freq_hz[idx[i]]);
    const double before = acc;
    while (i < idx.size() && std::abs(psd.freq_hz[idx[i]]) == f) acc += psd.power[idx[i++]];
    if (acc >= fraction * total) {
      const double w = acc > before ? (fraction * total - before) / (acc - before) : 1.0;
      return 2.0 * (prev_f + w * (f - prev_f));
    }
    prev_f = f;
  }
  return 2.0 * prev_f;
}

}  // namespace stmm
