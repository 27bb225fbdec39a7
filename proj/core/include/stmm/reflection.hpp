#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

#include "stmm/geometry.hpp"
#include "stmm/phase_signal.hpp"

namespace stmm {

struct CouplingParams {
  IncidenceGeometry geometry;
  StmmConfig stmm;
  // Fractional frequency shift f_s / f_i; f_o = f_i (1 + kappa).
  double kappa = 0.0;

  void validate() const;
};

// Normalised array factor under coupling, closed Dirichlet form. The common
// time-varying phasor exp(j 2 pi f_i kappa t) is dropped.
std::complex<double> array_factor_2d(const CouplingParams& p);

// Same quantity by explicit summation over every meta-atom.
std::complex<double> array_factor_direct(const CouplingParams& p);

// |AF|^2 for a linear array of m_u atoms at quarter-wave spacing, phi = 0.
double array_factor_1d(double theta, double kappa, int m_u);

// Normalised Dirichlet kernel D_M(u) = sum_{k<M} exp(-j 2 u k) / M.
std::complex<double> dirichlet(double u, int m);

// Direction of maximum reflection; nullopt marks an evanescent wave.
std::optional<double> squint_angle(double theta, double kappa);

class SamplingPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Temporal part of the programmed phase for an atom with residual delay dt.
double temporal_phase_law(Architecture law, const PhaseSignal& gamma, double t, double dt,
                          bool allow_one_sided = false);

// Phase programmed on meta-atom (q, v) at time t.
//   A:             phi + gamma(t + dt)
//   B:             phi + gamma(t) + gamma'(t) dt
//   Uncompensated: phi + gamma(t)
// B throws SamplingPointError where gamma' is one-sided unless
// allow_one_sided is set.
double phase_law(Architecture law, const IncidenceGeometry& g, const StmmConfig& s,
                 const PhaseSignal& gamma, double t, int q, int v, bool allow_one_sided = false);

// Temporal part of the phase carried by the wave leaving (q, v) and arriving
// at the receiver at stream time t (the program evaluated at t - dt). For the
// uncompensated law this is phi + gamma(t - dt).
double received_phase(Architecture law, const IncidenceGeometry& g, const StmmConfig& s,
                      const PhaseSignal& gamma, double t, int q, int v, bool allow_one_sided = false);

// Multiplicative channel through the surface at absolute time t:
//   sum_{q,v} exp(-j 4 pi f_i dt) exp(j beta_{q,v}(t - dt - tau)).
std::complex<double> coupling_channel_gain(const IncidenceGeometry& g, const StmmConfig& s,
                                           const PhaseSignal& gamma, double t,
                                           Architecture law = Architecture::Uncompensated);

}  // namespace stmm
