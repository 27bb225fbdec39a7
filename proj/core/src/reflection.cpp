#include "stmm/reflection.hpp"

#include <cmath>
#include <vector>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"

namespace stmm {

void CouplingParams::validate() const {
  stmm.validate();
  if (!std::isfinite(kappa) || std::abs(kappa) >= 1.0) throw std::invalid_argument("kappa must satisfy |kappa| < 1");
}

std::complex<double> dirichlet(double u, int m) {
  const double s = std::sin(u);
  double ratio;
  if (std::abs(s) < 1e-8) {
    // Near u = k pi: sin(M u) / (M sin u) -> (-1)^{k(M-1)} (1 - (M^2-1) e^2 / 6).
    const double k = std::nearbyint(u / pi);
    const double e = u - k * pi;
    const double mm = static_cast<double>(m);
    const bool flip = std::fmod(std::abs(k) * (mm - 1.0), 2.0) != 0.0;
    ratio = (1.0 - (mm * mm - 1.0) * e * e / 6.0) * (flip ? -1.0 : 1.0);
  } else {
    ratio = std::sin(m * u) / (m * s);
  }
  return std::polar(ratio, -(m - 1) * u);
}

std::complex<double> array_factor_2d(const CouplingParams& p) {
  const double f = p.geometry.carrier();
  const double ux = pi * f * p.kappa * delay_step_x(p.geometry, p.stmm);
  const double uy = pi * f * p.kappa * delay_step_y(p.geometry, p.stmm);
  return dirichlet(ux, p.stmm.m_ux) * dirichlet(uy, p.stmm.m_uy);
}

std::complex<double> array_factor_direct(const CouplingParams& p) {
  const auto& g = p.geometry;
  const double w = two_pi * g.carrier() * p.kappa;
  std::vector<cplx> rows(p.stmm.m_ux);
  std::vector<cplx> row(p.stmm.m_uy);
  for (int q = 0; q < p.stmm.m_ux; ++q) {
    for (int v = 0; v < p.stmm.m_uy; ++v) row[v] = std::polar(1.0, -w * meta_atom_delay(g, p.stmm, q, v));
    rows[q] = pairwise_sum<cplx>(row);
  }
  return pairwise_sum<cplx>(rows) / static_cast<double>(p.stmm.m_u());
}

double array_factor_1d(double theta, double kappa, int m_u) {
  const double u = (pi / 4.0) * kappa * std::cos(theta);
  const double s = std::sin(u);
  if (std::abs(s) < 1e-8) {
    const double e = u - std::nearbyint(u / pi) * pi;
    const double r = 1.0 - (static_cast<double>(m_u) * m_u - 1.0) * e * e / 6.0;
    return r * r;
  }
  const double r = std::sin(m_u * u) / (m_u * s);
  return r * r;
}

std::optional<double> squint_angle(double theta, double kappa) {
  const double arg = (1.0 + kappa) * std::cos(theta);
  if (std::abs(arg) > 1.0) return std::nullopt;
  return std::acos(arg);
}

double temporal_phase_law(Architecture law, const PhaseSignal& gamma, double t, double dt, bool allow_one_sided) {
  switch (law) {
    case Architecture::A:
      return gamma.phase(t + dt);
    case Architecture::B: {
      const PhaseRate r = gamma.rate(t);
      if (r.one_sided && !allow_one_sided)
        throw SamplingPointError("phase derivative is discontinuous at the requested instant");
      return gamma.phase(t) + r.value * dt;
    }
    case Architecture::Uncompensated:
      return gamma.phase(t);
  }
  return 0.0;
}

double phase_law(Architecture law, const IncidenceGeometry& g, const StmmConfig& s, const PhaseSignal& gamma,
                 double t, int q, int v, bool allow_one_sided) {
  return spatial_phase(g, s, q, v) + temporal_phase_law(law, gamma, t, meta_atom_delay(g, s, q, v), allow_one_sided);
}

double received_phase(Architecture law, const IncidenceGeometry& g, const StmmConfig& s, const PhaseSignal& gamma,
                      double t, int q, int v, bool allow_one_sided) {
  return phase_law(law, g, s, gamma, t - meta_atom_delay(g, s, q, v), q, v, allow_one_sided);
}

std::complex<double> coupling_channel_gain(const IncidenceGeometry& g, const StmmConfig& s, const PhaseSignal& gamma,
                                           double t, Architecture law) {
  const double w = 4.0 * pi * g.carrier();
  const double tau = g.tau();
  std::vector<cplx> rows(s.m_ux);
  std::vector<cplx> row(s.m_uy);
  for (int q = 0; q < s.m_ux; ++q) {
    for (int v = 0; v < s.m_uy; ++v) {
      const double dt = meta_atom_delay(g, s, q, v);
      const double beta = phase_law(law, g, s, gamma, t - dt - tau, q, v, true);
      row[v] = std::polar(1.0, beta - w * dt);
    }
    rows[q] = pairwise_sum<cplx>(row);
  }
  return pairwise_sum<cplx>(rows);
}

}  // namespace stmm
