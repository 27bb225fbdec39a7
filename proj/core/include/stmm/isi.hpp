#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "stmm/geometry.hpp"
#include "stmm/modulation.hpp"

namespace stmm {

struct IsiOptions {
  int streams = 1000;
  int symbols = 4;
  int samples_per_symbol = 8;
  std::uint64_t seed = 1;
};

// Interference from meta-atoms whose delay reaches past one symbol. The
// demodulated response of the late set g'' is split into its mean, which adds
// coherently to the wanted signal, and a random part, which is interference.
// Powers are relative to the coherent M_u^2.
struct IsiEstimate {
  // E|g'' - E g''|^2 / M_u^2.
  double sigma2_isi = 0.0;
  double ci_halfwidth = 0.0;
  // E g'' / M_u.
  std::complex<double> late_mean;
  // |A' + E g''|^2 / M_u^2 with A' the first-order array sum over the
  // in-symbol atoms (|M'| for compensated laws).
  double useful_power = 0.0;
  // E|g|^2 / M_u^2 over the whole aperture.
  double total_power = 0.0;
  std::size_t useful_count = 0;
  std::size_t interfering_count = 0;
};

// Monte-Carlo over random CPM streams through the waveform oracle, for the
// architecture in s. Throws std::logic_error when the aperture delay does not
// exceed T_u.
IsiEstimate isi_power(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm,
                      const IsiOptions& opt = {});

// Thread-safe cache of isi_power keyed by the full configuration.
class IsiEstimator {
 public:
  explicit IsiEstimator(IsiOptions opt = {}) : opt_(opt) {}
  IsiEstimate estimate(const IncidenceGeometry& g, const StmmConfig& s, const CpmConfig& cpm);
  std::size_t cache_size() const;
  const IsiOptions& options() const { return opt_; }

 private:
  IsiOptions opt_;
  mutable std::mutex mu_;
  std::map<std::string, IsiEstimate> cache_;
};

// SINR = snr_nb * useful / (1 + snr_nb * sigma2_isi), snr_nb being the
// uplink SNR at unit array gain.
double isi_sinr(double snr_nb, const IsiEstimate& e);

}  // namespace stmm
