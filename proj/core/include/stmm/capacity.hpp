#pragma once

namespace stmm {

struct SpectralEfficiency {
  double eta_d = 0.0;
  double eta_u = 0.0;
  double eta_total = 0.0;
  double mu = 0.0;
  // mu at 0 or 1: only one link is active.
  bool degenerate = false;
};

// eta = (1 - mu) log2(1 + snr_d) + mu log2(1 + snr_u).
SpectralEfficiency spectral_efficiency(double snr_d, double snr_u, double mu);

// Split model with snr_u = tilde_u / mu.
double eta_of_mu(double snr_d, double tilde_u, double mu);
double deta_dmu(double snr_d, double tilde_u, double mu);

struct OptimalMu {
  double mu = 0.0;
  double derivative = 0.0;
  int iterations = 0;
  // No sign change on the search interval; mu is the better end.
  bool boundary = false;
};

inline constexpr double mu_lo = 1e-6;
inline constexpr double mu_hi = 1.0 - 1e-6;

OptimalMu optimal_mu(double snr_d, double tilde_u);

}  // namespace stmm
