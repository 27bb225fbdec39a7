#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "stmm/geometry.hpp"
#include "stmm/link.hpp"
#include "stmm/modulation.hpp"
#include "stmm/phase_signal.hpp"

namespace stmm {

enum class DownlinkWaveform { ConstantEnvelope, RandomQpskLike };
std::string_view to_string(DownlinkWaveform w);
DownlinkWaveform parse_downlink_waveform(std::string_view s);

struct WaveformScenario {
  IncidenceGeometry geometry;
  StmmConfig stmm;
  CpmConfig cpm;
  LinkConfig link;
  Architecture law = Architecture::Uncompensated;
  // Samples per B_u^-1; the record runs at ceil(oversampling * eps) samples
  // per symbol.
  double oversampling = 16.0;
  int duration_symbols = 64;
  DownlinkWaveform downlink = DownlinkWaveform::ConstantEnvelope;
  ChannelRealization channel;

  // Throws std::invalid_argument if the sample rate cannot resolve the
  // uplink band (16 B_u) or the downlink band (2 B_d).
  void validate() const;

  int samples_per_symbol() const;
  double sample_rate() const;
  // First symbol inside the record; leaves room for the aperture delay.
  int first_symbol() const;
  // Stream length needed by simulate_rx.
  std::size_t required_symbols() const;
  // rho^2 = N^2 |xi|^2 / rho_u.
  double rho_sq() const;
};

// Reference downlink waveform s_d on the stream-time axis: a constant
// envelope of power sigma^2_{s,d}, or random QPSK symbols at rate B_d
// interpolated with the windowed sinc below. Symbol m is a pure function of
// (seed, m), so the waveform is defined at any instant.
class DownlinkSignal {
 public:
  DownlinkSignal(const WaveformScenario& sc, std::uint64_t seed);
  std::complex<double> operator()(double s) const;
  bool constant_envelope() const { return !qpsk_; }

 private:
  std::complex<double> symbol(long long m) const;

  double amplitude_;
  bool qpsk_ = false;
  double rate_ = 0.0;
  std::uint64_t seed_ = 0;
};

// Kaiser-windowed sinc, `taps` taps, normalised to unit DC gain. Returns the
// weights for delaying a unit-rate sequence by frac in [0, 1).
std::vector<double> fractional_delay_taps(double frac, int taps = 32, double beta = 8.0);

struct RxRecord {
  double sample_rate = 0.0;
  // Stream time of sample 0; absolute time is stream time plus tau.
  double start_time = 0.0;
  double tau = 0.0;
  int samples_per_symbol = 0;
  int first_symbol = 0;
  std::vector<std::complex<double>> samples;

  double time_of(std::size_t k) const;
};

struct SimOptions {
  std::uint64_t seed = 1;
  bool signal = true;
  bool noise = false;
  // Delays the whole input (phase signal and downlink) by this many samples.
  int input_delay_samples = 0;
  // Extra samples appended after duration_symbols.
  int extra_samples = 0;
};

// Time-domain received uplink baseband: for every sample and meta-atom,
//   rho exp(j(phi - 4 pi f_i dt)) exp(j beta_law(s - dt)) s_d(s - 2 dt)
// summed over the aperture, plus optional complex Gaussian noise of density
// N_0. Samples sit half a sample off the symbol grid.
RxRecord simulate_rx(const WaveformScenario& sc, const PhaseSignal& gamma, const SimOptions& opt);
RxRecord simulate_rx(const WaveformScenario& sc, const SymbolStream& stream, std::uint64_t seed, bool noise = false);

// arg sum y(s) s_d*(s) over uplink symbol n.
double matched_filter_phase(const RxRecord& rec, const DownlinkSignal& sd, double tau, int n);

// Mean |y|^2 / (rho^2 sigma^2 M_u^2) over the record.
double empirical_gain(const RxRecord& rec, const WaveformScenario& sc);

struct SnrEstimate {
  double value = 0.0;
  // Same ratio with the signal measured as |sum y exp(-j gamma) s_d^*|^2,
  // i.e. after removing the wanted phase trajectory.
  double coherent_value = 0.0;
  double ci_halfwidth = 0.0;
  double signal_power = 0.0;
  double noise_power = 0.0;
  int trials = 0;
};

// Matched-filter SNR. Signal energy per symbol uses the phase-tracking bound
// sigma^2 T int|y|^2 from a noiseless run; with noise_on the noise term is
// measured from signal-free runs, otherwise the analytic N_0 sigma^2 T.
SnrEstimate empirical_snr(const WaveformScenario& sc, const SymbolStream& stream, bool noise_on, int trials,
                          std::uint64_t seed = 1);

// Demodulated array response g(s) = sum_{atoms in mask} exp(j(beta_recv(s) - gamma(s)))
// at the given stream times. An empty mask selects every atom.
std::vector<std::complex<double>> array_response(const WaveformScenario& sc, const PhaseSignal& gamma,
                                                 const std::vector<double>& times,
                                                 const std::vector<bool>& atom_mask = {});

// Binary record I/O; layout documented in docs/iq_format.md.
void write_iq(const std::filesystem::path& path, const RxRecord& rec);
RxRecord read_iq(const std::filesystem::path& path);

}  // namespace stmm
