#include "stmm/link.hpp"

#include <cmath>
#include <stdexcept>

#include "stmm/constants.hpp"
#include "stmm/isi.hpp"
#include "stmm/numeric.hpp"
#include "stmm/reflection.hpp"
#include "stmm/rng.hpp"

namespace stmm {

void LinkConfig::validate() const {
  if (n_master < 1 || m_d < 1) throw std::invalid_argument("array sizes must be >= 1");
  if (!(tx_power >= 0.0) || !(noise_power_master >= 0.0) || !(noise_power_slave >= 0.0))
    throw std::invalid_argument("powers must be >= 0");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0, 1)");
  if (!(total_bandwidth > 0.0) || !std::isfinite(total_bandwidth))
    throw std::invalid_argument("total bandwidth must be positive");
}

ChannelRealization ChannelRealization::deterministic(const IncidenceGeometry& g) {
  ChannelRealization c;
  c.path_delay = {g.tau()};
  return c;
}

ChannelRealization ChannelRealization::rayleigh(const IncidenceGeometry& g, std::uint64_t seed) {
  ChannelRealization c;
  CounterRng rng(seed);
  c.xi = {rng.complex_normal(1.0)};
  c.path_delay = {g.tau()};
  return c;
}

PathLoss path_loss(const IncidenceGeometry& g, std::optional<double> out_kappa) {
  const double d = g.distance();
  const double li = g.wavelength();
  const double lo = out_kappa ? li / (1.0 + *out_kappa) : li;
  PathLoss p;
  p.rho_d = 16.0 * pi * d * d / (li * li);
  p.rho_u = 4096.0 * pi * (d * d) * (d * d) / ((li * li) * (lo * lo));
  return p;
}

double snr_downlink(const LinkConfig& link, const IncidenceGeometry& g) {
  return link.tx_power * link.n_master * link.m_d / (path_loss(g).rho_d * link.noise_power_master);
}

double siso_snr(const LinkConfig& link, const IncidenceGeometry& g) {
  return link.tx_power / (path_loss(g).rho_d * link.noise_power_master);
}

double tx_power_for_siso_snr(double siso, double noise_power, const IncidenceGeometry& g) {
  return siso * path_loss(g).rho_d * noise_power;
}

UplinkSnr snr_uplink(const LinkConfig& link, const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm,
                     double af_sq) {
  if (!(af_sq >= 0.0 && af_sq <= 1.0 + 1e-12)) throw std::invalid_argument("array gain must lie in [0, 1]");
  const double n = link.n_master;
  const double m = static_cast<double>(s.m_u());
  const double base = link.tx_power * n * n * m * m * af_sq / (path_loss(g).rho_u * link.noise_power_master);
  UplinkSnr out;
  out.snr = base * cpm.symbol_time * link.total_bandwidth;
  out.tilde = base * occupied_bandwidth(cpm).epsilon;
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Narrowband: return "narrowband";
    case Regime::WidebandNoIsi: return "wideband";
    case Regime::WidebandIsi: return "wideband_isi";
  }
  return "?";
}

std::vector<std::pair<std::string, std::string>> RegimeReport::to_record() const {
  std::vector<std::pair<std::string, std::string>> r;
  r.emplace_back("regime", std::string(to_string(regime)));
  r.emplace_back("delta_t_s", format_double(delta_t));
  r.emplace_back("symbol_time_s", format_double(symbol_time));
  r.emplace_back("snr", format_double(snr_or_sinr));
  r.emplace_back("af_sq", format_double(af_sq));
  r.emplace_back("isi_power", isi_power ? format_double(*isi_power) : "");
  r.emplace_back("isi_ci", isi_ci ? format_double(*isi_ci) : "");
  r.emplace_back("useful_atoms", std::to_string(useful_set_size));
  r.emplace_back("interfering_atoms", std::to_string(interfering_set_size));
  return r;
}

MetaAtomPartition partition_meta_atoms(const IncidenceGeometry& g, const StmmConfig& s, double symbol_time) {
  MetaAtomPartition p;
  const double dx = delay_step_x(g, s);
  const double dy = delay_step_y(g, s);
  for (int q = 0; q < s.m_ux; ++q)
    for (int v = 0; v < s.m_uy; ++v) {
      if (std::abs(q * dx + v * dy) < symbol_time)
        ++p.useful;
      else
        ++p.interfering;
    }
  return p;
}

Regime regime_of(double delta_t, double symbol_time) {
  if (delta_t <= narrowband_ratio * symbol_time) return Regime::Narrowband;
  if (delta_t <= symbol_time) return Regime::WidebandNoIsi;
  return Regime::WidebandIsi;
}

double cutoff_kappa(double h, const IncidenceGeometry& g, const StmmConfig& s) {
  const double dT = aperture_delay(g, s);
  if (dT <= 0.0) return INFINITY;
  return h / (2.0 * g.carrier() * dT);
}

RegimeReport classify_regime(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm,
                             const LinkConfig& link, IsiEstimator& est) {
  RegimeReport r;
  r.delta_t = aperture_delay(g, s);
  r.symbol_time = cpm.symbol_time;
  r.regime = regime_of(r.delta_t, cpm.symbol_time);
  const double snr_nb = snr_uplink(link, g, s, cpm, 1.0).snr;
  const auto part = partition_meta_atoms(g, s, cpm.symbol_time);
  r.useful_set_size = part.useful;
  r.interfering_set_size = part.interfering;

  switch (r.regime) {
    case Regime::Narrowband:
      r.af_sq = 1.0;
      r.snr_or_sinr = snr_nb;
      break;
    case Regime::WidebandNoIsi:
      r.af_sq = s.architecture == Architecture::Uncompensated
                    ? std::norm(array_factor_2d({g, s, kappa_of(cpm, g.carrier())}))
                    : 1.0;
      r.snr_or_sinr = snr_nb * r.af_sq;
      break;
    case Regime::WidebandIsi: {
      const IsiEstimate e = est.estimate(g, s, cpm);
      r.af_sq = e.useful_power;
      r.isi_power = e.sigma2_isi;
      r.isi_ci = e.ci_halfwidth;
      r.snr_or_sinr = isi_sinr(snr_nb, e);
      break;
    }
  }
  return r;
}

}  // namespace stmm
