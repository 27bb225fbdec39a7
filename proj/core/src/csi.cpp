#include "stmm/csi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"
#include "stmm/parallel.hpp"
#include "stmm/reflection.hpp"
#include "stmm/rng.hpp"

namespace stmm {

double crlb_sigma_theta(double theta, double siso_snr, int n_master, int m_d) {
  if (m_d < 2) throw std::domain_error("the elevation bound needs at least two receive elements");
  if (!(theta > 0.0 && theta < pi)) throw std::domain_error("theta must lie in (0, pi)");
  if (!(siso_snr > 0.0)) throw std::domain_error("SNR must be positive");
  if (n_master < 1) throw std::domain_error("master array size must be >= 1");
  const double st = std::sin(theta);
  const double n = n_master;
  const double md = m_d;
  const double var = 96.0 / (pi * pi * st * st * siso_snr * n * n * md * (md * md - 1.0));
  return std::sqrt(var);
}

std::string_view to_string(CsiEstimator e) { return e == CsiEstimator::CrlbAttained ? "crlb" : "fixed"; }

CsiEstimator parse_csi_estimator(std::string_view s) {
  if (s == "crlb") return CsiEstimator::CrlbAttained;
  if (s == "fixed") return CsiEstimator::FixedSigma;
  throw std::invalid_argument("unknown CSI estimator '" + std::string(s) + "'");
}

double csi_loss_sample(double theta, double kappa, int m_ux, double d, bool exact_phase) {
  const double spread = exact_phase ? std::cos(theta) - std::cos(theta + d) : d * std::sin(theta);
  const double x = (pi / 4.0) * (2.0 + kappa) * spread;
  return std::norm(dirichlet(x, m_ux));
}

double csi_small_error_coefficient(double theta, double kappa, int m_ux) {
  const double a = (pi / 4.0) * (2.0 + kappa) * std::sin(theta);
  const double m = m_ux;
  return (m * m - 1.0) * a * a / 3.0;
}

CsiLoss csi_loss_factor(const IncidenceGeometry& g, const StmmConfig& s, double kappa, const CsiErrorModel& err) {
  if (g.phi() != 0.0) throw std::invalid_argument("the CSI loss model assumes phi = 0");
  if (!(err.sigma_theta_sq >= 0.0)) throw std::invalid_argument("error variance must be >= 0");
  CsiLoss out;
  out.samples = err.mc_samples;
  if (err.sigma_theta_sq == 0.0 || err.mc_samples == 0) return out;

  const double sigma = std::sqrt(err.sigma_theta_sq);
  const std::size_t n = err.mc_samples;
  // Draws are produced in fixed blocks so the reduction shape is independent
  // of the worker count.
  constexpr std::size_t block = 4096;
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<double> bmean(blocks), bm2(blocks);
  std::vector<std::size_t> redraws(blocks);
  const CounterRng root(err.seed);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(n, lo + block);
    std::vector<double> v(hi - lo);
    std::size_t rd = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      CounterRng r = root.substream(i);
      double d = sigma * r.normal();
      while (std::abs(d) > err.truncation) {
        ++rd;
        d = sigma * r.normal();
      }
      v[i - lo] = std::clamp(csi_loss_sample(g.theta(), kappa, s.m_ux, d, err.exact_phase), 0.0, 1.0);
    }
    const double mu = pairwise_sum<double>(v) / static_cast<double>(v.size());
    for (auto& x : v) x = (x - mu) * (x - mu);
    bmean[b] = mu;
    bm2[b] = pairwise_sum<double>(v);
    redraws[b] = rd;
  });
  // Merge block moments in block order.
  double count = 0.0, mean = 0.0, m2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double nb = static_cast<double>(std::min(n, (b + 1) * block) - b * block);
    const double delta = bmean[b] - mean;
    const double tot = count + nb;
    mean += delta * nb / tot;
    m2 += bm2[b] + delta * delta * count * nb / tot;
    count = tot;
  }
  const double nn = static_cast<double>(n);
  const double var = m2 / std::max(1.0, nn - 1.0);
  std::size_t total_redraws = 0;
  for (auto r : redraws) total_redraws += r;
  out.mean = std::clamp(mean, 0.0, 1.0);
  out.ci_halfwidth = 1.96 * std::sqrt(var / nn);
  out.truncation_rate = static_cast<double>(total_redraws) / static_cast<double>(total_redraws + n);
  return out;
}

double ook_baseline_se(const LinkConfig& link, const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm,
                       const CsiErrorModel& err) {
  const double kappa = kappa_of(cpm, g.carrier());
  const double af = std::norm(array_factor_2d({g, s, kappa}));
  const double snr = snr_uplink(link, g, s, cpm, 1.0).snr;
  const double loss = csi_loss_factor(g, s, 0.0, err).mean;
  return link.mu * std::min(1.0, std::log2(1.0 + snr * af * loss / 2.0));
}

}  // namespace stmm
