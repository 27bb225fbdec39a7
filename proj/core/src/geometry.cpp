#include "stmm/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stmm/constants.hpp"
#include "stmm/numeric.hpp"

namespace stmm {

std::string_view to_string(Architecture a) {
  switch (a) {
    case Architecture::A: return "A";
    case Architecture::B: return "B";
    case Architecture::Uncompensated: return "uncompensated";
  }
  return "?";
}

Architecture parse_architecture(std::string_view s) {
  if (s == "A" || s == "a") return Architecture::A;
  if (s == "B" || s == "b") return Architecture::B;
  if (s == "uncompensated" || s == "none" || s == "coupled") return Architecture::Uncompensated;
  throw std::invalid_argument("unknown architecture '" + std::string(s) + "'");
}

IncidenceGeometry::IncidenceGeometry(double theta, double phi, double distance, double carrier_hz)
    : theta_(theta), phi_(phi), distance_(distance), carrier_(carrier_hz), wavelength_(speed_of_light / carrier_hz) {
  // Grazing incidence (theta = 0) is admitted as a limit case.
  if (!(theta >= 0.0 && theta <= pi / 2.0))
    throw std::invalid_argument("theta must lie in [0, pi/2]");
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  if (!(distance > 0.0) || !std::isfinite(distance)) throw std::invalid_argument("distance must be positive");
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) throw std::invalid_argument("carrier must be positive");
}

double IncidenceGeometry::tau() const { return distance_ / speed_of_light; }

double StmmConfig::dx(const IncidenceGeometry& g) const { return spacing_dx.value_or(g.wavelength() / 4.0); }
double StmmConfig::dy(const IncidenceGeometry& g) const { return spacing_dy.value_or(g.wavelength() / 4.0); }

void StmmConfig::validate() const {
  if (m_ux < 1 || m_uy < 1) throw std::invalid_argument("meta-atom counts must be >= 1");
  if (spacing_dx && !(*spacing_dx > 0.0)) throw std::invalid_argument("spacing_dx must be positive");
  if (spacing_dy && !(*spacing_dy > 0.0)) throw std::invalid_argument("spacing_dy must be positive");
}

std::array<double, 3> wavevector(const IncidenceGeometry& g) {
  const double k = two_pi / g.wavelength();
  const double ct = std::cos(g.theta());
  return {k * ct * std::cos(g.phi()), k * ct * std::sin(g.phi()), k * std::sin(g.theta())};
}

double delay_step_x(const IncidenceGeometry& g, const StmmConfig& s) {
  return s.dx(g) * std::cos(g.theta()) * std::cos(g.phi()) / speed_of_light;
}

double delay_step_y(const IncidenceGeometry& g, const StmmConfig& s) {
  return s.dy(g) * std::cos(g.theta()) * std::sin(g.phi()) / speed_of_light;
}

namespace {
void check_index(const StmmConfig& s, int q, int v) {
  if (q < 0 || q >= s.m_ux || v < 0 || v >= s.m_uy)
    throw std::domain_error("meta-atom index (" + std::to_string(q) + ", " + std::to_string(v) + ") out of range");
}
}  // namespace

double meta_atom_delay(const IncidenceGeometry& g, const StmmConfig& s, int q, int v) {
  check_index(s, q, v);
  return q * delay_step_x(g, s) + v * delay_step_y(g, s);
}

double aperture_delay(const IncidenceGeometry& g, const StmmConfig& s) {
  return s.m_ux * std::abs(delay_step_x(g, s)) + s.m_uy * std::abs(delay_step_y(g, s));
}

double spatial_phase(const IncidenceGeometry& g, const StmmConfig& s, int q, int v) {
  check_index(s, q, v);
  // Twice the in-plane wavevector projected on the atom position.
  const double k = two_pi / g.wavelength();
  const double ct = std::cos(g.theta());
  return 2.0 * k * ct * (q * s.dx(g) * std::cos(g.phi()) + v * s.dy(g) * std::sin(g.phi()));
}

double spatial_phase_wrapped(const IncidenceGeometry& g, const StmmConfig& s, int q, int v) {
  return wrap_phase(spatial_phase(g, s, q, v));
}

}  // namespace stmm
