#include "stmm/isi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"
#include "stmm/oracle.hpp"
#include "stmm/parallel.hpp"
#include "stmm/rng.hpp"

namespace stmm {

IsiEstimate isi_power(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm, const IsiOptions& opt) {
  s.validate();
  cpm.validate();
  const double tu = cpm.symbol_time;
  if (!(aperture_delay(g, s) > tu)) throw std::logic_error("ISI power requested outside the ISI regime");
  if (opt.streams < 2 || opt.symbols < 1 || opt.samples_per_symbol < 1)
    throw std::invalid_argument("bad ISI Monte-Carlo options");

  const double m = static_cast<double>(s.m_u());
  const double w = two_pi * g.carrier() * kappa_of(cpm, g.carrier());
  std::vector<bool> late(static_cast<std::size_t>(s.m_u()));
  IsiEstimate e;
  std::vector<std::complex<double>> early_terms;
  for (int q = 0; q < s.m_ux; ++q)
    for (int v = 0; v < s.m_uy; ++v) {
      const double dt = meta_atom_delay(g, s, q, v);
      const bool is_late = std::abs(dt) >= tu;
      late[static_cast<std::size_t>(q) * s.m_uy + v] = is_late;
      if (is_late) {
        ++e.interfering_count;
      } else {
        ++e.useful_count;
        early_terms.push_back(s.architecture == Architecture::Uncompensated ? std::polar(1.0, -w * dt)
                                                                            : std::complex<double>(1.0));
      }
    }
  const std::complex<double> a_early = pairwise_sum<std::complex<double>>(early_terms) / m;

  WaveformScenario sc{g, s, cpm, LinkConfig{}, s.architecture};
  const int n0 = sc.first_symbol();
  const int per_stream = opt.symbols * opt.samples_per_symbol;
  std::vector<double> times(per_stream);
  for (int j = 0; j < per_stream; ++j)
    times[j] = (n0 + (j + 0.5) / opt.samples_per_symbol) * tu;

  const std::size_t streams = static_cast<std::size_t>(opt.streams);
  std::vector<std::vector<std::complex<double>>> late_resp(streams);
  std::vector<double> total(streams);
  const CounterRng root(opt.seed);
  parallel_for(streams, [&](std::size_t r) {
    const auto stream = SymbolStream::random(cpm.alphabet_m, static_cast<std::size_t>(n0 + opt.symbols + 2),
                                             root.substream(r).next_u64());
    const CpmSignal gamma(cpm, stream);
    late_resp[r] = e.interfering_count ? array_response(sc, gamma, times, late)
                                       : std::vector<std::complex<double>>(per_stream, 0.0);
    const auto all = array_response(sc, gamma, times);
    std::vector<double> p(all.size());
    for (std::size_t k = 0; k < all.size(); ++k) p[k] = std::norm(all[k]);
    total[r] = pairwise_sum<double>(p) / static_cast<double>(p.size());
  });

  std::vector<std::complex<double>> means(streams);
  for (std::size_t r = 0; r < streams; ++r) means[r] = pairwise_sum<std::complex<double>>(late_resp[r]) / double(per_stream);
  const std::complex<double> mean = pairwise_sum<std::complex<double>>(means) / static_cast<double>(streams);

  std::vector<double> inc(streams);
  for (std::size_t r = 0; r < streams; ++r) {
    std::vector<double> d(per_stream);
    for (int k = 0; k < per_stream; ++k) d[k] = std::norm(late_resp[r][k] - mean);
    inc[r] = pairwise_sum<double>(d) / per_stream / (m * m);
  }
  const double sigma2 = pairwise_sum<double>(inc) / static_cast<double>(streams);
  double var = 0.0;
  for (double x : inc) var += (x - sigma2) * (x - sigma2);
  var /= static_cast<double>(streams - 1);

  e.sigma2_isi = sigma2;
  e.ci_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(streams));
  e.late_mean = mean / m;
  e.useful_power = std::norm(a_early + e.late_mean);
  e.total_power = pairwise_sum<double>(total) / static_cast<double>(streams) / (m * m);
  return e;
}

namespace {

std::string cache_key(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& c) {
  std::string k;
  auto add = [&k](double x) {
    k += format_double(x);
    k += '|';
  };
  add(g.theta());
  add(g.phi());
  add(g.distance());
  add(g.carrier());
  add(s.m_ux);
  add(s.m_uy);
  add(s.dx(g));
  add(s.dy(g));
  add(static_cast<double>(s.architecture));
  add(c.h);
  add(c.alphabet_m);
  add(c.memory_l);
  add(c.symbol_time);
  add(static_cast<double>(c.psf));
  add(c.energy_factor.value_or(-1.0));
  add(c.gaussian_bt);
  return k;
}

}  // namespace

IsiEstimate IsiEstimator::estimate(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm) {
  const std::string key = cache_key(g, s, cpm);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const IsiEstimate e = isi_power(g, s, cpm, opt_);
  std::lock_guard lock(mu_);
  return cache_.emplace(key, e).first->second;
}

std::size_t IsiEstimator::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

double isi_sinr(double snr_nb, const IsiEstimate& e) {
  return snr_nb * e.useful_power / (1.0 + snr_nb * e.sigma2_isi);
}

}  // namespace stmm
