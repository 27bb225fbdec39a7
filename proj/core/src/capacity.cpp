#include "stmm/capacity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stmm {

SpectralEfficiency spectral_efficiency(double snr_d, double snr_u, double mu) {
  if (!(snr_d >= 0.0) || !(snr_u >= 0.0)) throw std::invalid_argument("SNRs must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  SpectralEfficiency se;
  se.mu = mu;
  se.degenerate = mu == 0.0 || mu == 1.0;
  se.eta_d = (1.0 - mu) * std::log2(1.0 + snr_d);
  se.eta_u = mu * std::log2(1.0 + snr_u);
  se.eta_total = se.eta_d + se.eta_u;
  return se;
}

double eta_of_mu(double snr_d, double tilde_u, double mu) {
  return (1.0 - mu) * std::log2(1.0 + snr_d) + mu * std::log2(1.0 + tilde_u / mu);
}

double deta_dmu(double snr_d, double tilde_u, double mu) {
  return -std::log2(1.0 + snr_d) + std::log2(1.0 + tilde_u / mu) - tilde_u * std::numbers::log2e / (tilde_u + mu);
}

OptimalMu optimal_mu(double snr_d, double tilde_u) {
  if (!(snr_d >= 0.0) || !(tilde_u >= 0.0) || (snr_d == 0.0 && tilde_u == 0.0))
    throw std::invalid_argument("optimal split needs a positive SNR");
  // eta is concave in mu, so its derivative falls monotonically.
  double lo = mu_lo, hi = mu_hi;
  const double dlo = deta_dmu(snr_d, tilde_u, lo);
  const double dhi = deta_dmu(snr_d, tilde_u, hi);
  OptimalMu r;
  if (dlo <= 0.0 || dhi >= 0.0) {
    r.boundary = true;
    r.mu = dlo <= 0.0 ? lo : hi;
    r.derivative = dlo <= 0.0 ? dlo : dhi;
    return r;
  }
  double mid = 0.5 * (lo + hi);
  double d = deta_dmu(snr_d, tilde_u, mid);
  while (std::abs(d) >= 1e-10 && r.iterations < 200) {
    if (d > 0.0)
      lo = mid;
    else
      hi = mid;
    const double next = 0.5 * (lo + hi);
    ++r.iterations;
    if (next == mid) break;
    mid = next;
    d = deta_dmu(snr_d, tilde_u, mid);
  }
  r.mu = mid;
  r.derivative = d;
  return r;
}

}  // namespace stmm
