#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "stmm/phase_signal.hpp"

namespace stmm {

enum class PulseShape { Rectangular, RaisedCosine, Gaussian };

std::string_view to_string(PulseShape p);
PulseShape parse_pulse_shape(std::string_view s);

struct CpmConfig {
  double h = 1.0;
  int alphabet_m = 2;
  int memory_l = 1;
  double symbol_time = 1e-6;
  PulseShape psf = PulseShape::Rectangular;
  // Energy factor for the bandwidth formula; unset picks 1 (rectangular) or
  // 1.5 (raised cosine). The Gaussian pulse has no default.
  std::optional<double> energy_factor;
  double gaussian_bt = 0.3;

  void validate() const;
  std::optional<double> g() const;

  bool operator==(const CpmConfig&) const = default;
};

// Frequency pulse p(t) and phase pulse q(t) = int_0^t p; q(L T) = 1/2.
double frequency_pulse(const CpmConfig& cfg, double t);
double phase_pulse(const CpmConfig& cfg, double t);

struct SymbolStream {
  std::vector<int> symbols;
  std::uint64_t seed = 0;

  // Equiprobable odd levels in {+-1, ..., +-(M-1)}.
  static SymbolStream random(int alphabet_m, std::size_t n, std::uint64_t seed);
  static SymbolStream constant(int z, std::size_t n);

  void validate(int alphabet_m) const;

  // One integer per line; '#' starts a comment.
  void write_text(std::ostream& os) const;
  static SymbolStream read_text(std::istream& is);
};

// gamma(t) = 2 pi h sum_n z_n q(t - n T) over a finite stream, supported on
// [0, N T]. Evaluation is O(L) through a running prefix sum.
class CpmSignal final : public PhaseSignal {
 public:
  CpmSignal(CpmConfig cfg, SymbolStream stream);

  double phase(double t) const override;
  PhaseRate rate(double t) const override;

  double support_end() const;
  const CpmConfig& config() const { return cfg_; }
  const SymbolStream& stream() const { return stream_; }

 private:
  void check(double t) const;

  CpmConfig cfg_;
  SymbolStream stream_;
  std::vector<long long> prefix_;
};

double gamma(const CpmConfig& cfg, const SymbolStream& stream, double t);
PhaseRate gamma_derivative(const CpmConfig& cfg, const SymbolStream& stream, double t);

struct Bandwidth {
  double hz = 0.0;
  // B_u T_u.
  double epsilon = 0.0;
};

// 99%-energy approximation B_u = (h/T) sqrt(g (M^2-1)/(3L)) + g/(T L).
// Throws for a Gaussian pulse without an explicit energy factor.
Bandwidth occupied_bandwidth(const CpmConfig& cfg);

// Peak fractional frequency deviation h / (2 T f_i).
double kappa_of(const CpmConfig& cfg, double carrier_hz);
// Symbol time that produces the given kappa.
double symbol_time_for_kappa(double h, double kappa, double carrier_hz);

struct PowerSpectrum {
  std::vector<double> freq_hz;  // ascending, centred on 0
  std::vector<double> power;    // normalised to unit total
};

// Welch estimate of the PSD of exp(j gamma(t)) with Hann-windowed,
// half-overlapping segments.
PowerSpectrum welch_psd(const CpmConfig& cfg, const SymbolStream& stream, int samples_per_symbol,
                        int segment_symbols);

// Width of the band centred on 0 holding the given share of the power.
double energy_bandwidth(const PowerSpectrum& psd, double fraction = 0.99);

}  // namespace stmm
