#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stmm/geometry.hpp"
#include "stmm/modulation.hpp"

namespace stmm {

struct LinkConfig {
  int n_master = 1;
  int m_d = 1;
  // sigma^2_{s,d}, watts.
  double tx_power = 1.0;
  // Receiver noise power over the full band B_tot at the master and slave.
  double noise_power_master = 1.0;
  double noise_power_slave = 1.0;
  double mu = 0.5;
  double total_bandwidth = 1.0;

  void validate() const;
  // Noise density at the master, N_0 = sigma^2_z / B_tot.
  double noise_density_master() const { return noise_power_master / total_bandwidth; }
  double uplink_bandwidth() const { return mu * total_bandwidth; }
  double downlink_bandwidth() const { return (1.0 - mu) * total_bandwidth; }

  bool operator==(const LinkConfig&) const = default;
};

struct ChannelRealization {
  std::vector<std::complex<double>> xi{{1.0, 0.0}};
  std::vector<double> path_delay{0.0};

  std::size_t paths() const { return xi.size(); }
  static ChannelRealization deterministic(const IncidenceGeometry& g);
  // One Rayleigh path, xi ~ CN(0, 1).
  static ChannelRealization rayleigh(const IncidenceGeometry& g, std::uint64_t seed);
};

struct PathLoss {
  double rho_d = 1.0;
  double rho_u = 1.0;
};

// Free-space two-hop losses. With out_kappa set, the uplink denominator uses
// lambda_i^2 lambda_o^2, lambda_o = lambda_i / (1 + kappa).
PathLoss path_loss(const IncidenceGeometry& g, std::optional<double> out_kappa = std::nullopt);

double snr_downlink(const LinkConfig& link, const IncidenceGeometry& g);
// Equivalent SISO SNR, downlink SNR with N = M_d = 1.
double siso_snr(const LinkConfig& link, const IncidenceGeometry& g);
// Transmit power that yields the given SISO SNR.
double tx_power_for_siso_snr(double siso, double noise_power, const IncidenceGeometry& g);

struct UplinkSnr {
  double snr = 0.0;
  // Part that does not depend on the split; snr = tilde / mu when
  // B_tot = B_u / mu.
  double tilde = 0.0;
};

// Matched-filter uplink SNR with processing gain T_u B_tot.
UplinkSnr snr_uplink(const LinkConfig& link, const IncidenceGeometry& g, const StmmConfig& s,
                     const CpmConfig& cpm, double af_sq);

enum class Regime { Narrowband, WidebandNoIsi, WidebandIsi };
std::string_view to_string(Regime r);

// Aperture delay at or below T_u / 50 counts as narrowband.
inline constexpr double narrowband_ratio = 1.0 / 50.0;

struct RegimeReport {
  Regime regime = Regime::Narrowband;
  double delta_t = 0.0;
  double symbol_time = 0.0;
  double snr_or_sinr = 0.0;
  // |AF|^2 that enters the SNR (1 for compensated laws).
  double af_sq = 1.0;
  std::optional<double> isi_power;
  std::optional<double> isi_ci;
  std::size_t useful_set_size = 0;
  std::size_t interfering_set_size = 0;

  std::vector<std::pair<std::string, std::string>> to_record() const;
};

struct MetaAtomPartition {
  std::size_t useful = 0;       // dt < T_u
  std::size_t interfering = 0;  // dt >= T_u
};
MetaAtomPartition partition_meta_atoms(const IncidenceGeometry& g, const StmmConfig& s, double symbol_time);

Regime regime_of(double delta_t, double symbol_time);

// Kappa at which the aperture delay equals T_u for rectangular binary CPFSK,
// 2 h / (M_ux cos theta) at phi = 0 and quarter-wave spacing.
double cutoff_kappa(double h, const IncidenceGeometry& g, const StmmConfig& s);

class IsiEstimator;

// Classifies the delay regime and evaluates the matching SNR or SINR for the
// architecture in s. The ISI branch calls est.
RegimeReport classify_regime(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm,
                             const LinkConfig& link, IsiEstimator& est);

}  // namespace stmm
