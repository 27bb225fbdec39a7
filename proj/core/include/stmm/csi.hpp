#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "stmm/geometry.hpp"
#include "stmm/link.hpp"
#include "stmm/modulation.hpp"

namespace stmm {

// Standard deviation of the elevation estimate at the CRLB, radians.
// Requires M_d >= 2.
double crlb_sigma_theta(double theta, double siso_snr, int n_master, int m_d);

enum class CsiEstimator { CrlbAttained, FixedSigma };
std::string_view to_string(CsiEstimator e);
CsiEstimator parse_csi_estimator(std::string_view s);

struct CsiErrorModel {
  double sigma_theta_sq = 0.0;
  CsiEstimator estimator = CsiEstimator::FixedSigma;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  // Use cos(theta) - cos(theta + d) instead of d sin(theta).
  bool exact_phase = false;
  // Draws beyond this are redrawn.
  double truncation = 0.5235987755982988;

  bool operator==(const CsiErrorModel&) const = default;
};

struct CsiLoss {
  double mean = 1.0;
  double ci_halfwidth = 0.0;
  double truncation_rate = 0.0;
  std::size_t samples = 0;
};

// Expected pointing plus decoupling loss for a linear aperture of M_ux atoms
// (phi = 0), Monte-Carlo over the elevation error.
CsiLoss csi_loss_factor(const IncidenceGeometry& g, const StmmConfig& s, double kappa, const CsiErrorModel& err);

// Loss for a single elevation error d.
double csi_loss_sample(double theta, double kappa, int m_ux, double d, bool exact_phase);

// c in loss ~ 1 - c sigma^2 for small sigma.
double csi_small_error_coefficient(double theta, double kappa, int m_ux);

// On-off keyed surface without decoupling: mu min(1, log2(1 + snr |AF|^2 L / 2)).
double ook_baseline_se(const LinkConfig& link, const IncidenceGeometry& g, const StmmConfig& s,
                       const CpmConfig& cpm, const CsiErrorModel& err);

}  // namespace stmm
