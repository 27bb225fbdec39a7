#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace stmm {

enum class Architecture { A, B, Uncompensated };

std::string_view to_string(Architecture a);
Architecture parse_architecture(std::string_view s);

// Plane-wave incidence on the surface. theta is elevation from the surface
// plane (pi/2 = normal incidence), phi is azimuth; both in radians.
class IncidenceGeometry {
 public:
  IncidenceGeometry(double theta, double phi, double distance, double carrier_hz);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double distance() const { return distance_; }
  double carrier() const { return carrier_; }
  double wavelength() const { return wavelength_; }
  // One-way propagation delay D/c.
  double tau() const;

  IncidenceGeometry with_theta(double theta) const { return {theta, phi_, distance_, carrier_}; }
  IncidenceGeometry with_distance(double d) const { return {theta_, phi_, d, carrier_}; }

  bool operator==(const IncidenceGeometry&) const = default;

 private:
  double theta_;
  double phi_;
  double distance_;
  double carrier_;
  double wavelength_;
};

struct StmmConfig {
  int m_ux = 1;
  int m_uy = 1;
  // Unset means a quarter of the carrier wavelength.
  std::optional<double> spacing_dx;
  std::optional<double> spacing_dy;
  Architecture architecture = Architecture::A;

  long long m_u() const { return static_cast<long long>(m_ux) * m_uy; }
  double dx(const IncidenceGeometry& g) const;
  double dy(const IncidenceGeometry& g) const;

  // Throws std::invalid_argument on a bad grid or spacing.
  void validate() const;

  bool operator==(const StmmConfig&) const = default;
};

std::array<double, 3> wavevector(const IncidenceGeometry& g);

// Per-step delays across the aperture along x and y.
double delay_step_x(const IncidenceGeometry& g, const StmmConfig& s);
double delay_step_y(const IncidenceGeometry& g, const StmmConfig& s);

// Residual delay of meta-atom (q, v) relative to the phase centre (0, 0).
double meta_atom_delay(const IncidenceGeometry& g, const StmmConfig& s, int q, int v);

// M_ux*|dt_x| + M_uy*|dt_y|.
double aperture_delay(const IncidenceGeometry& g, const StmmConfig& s);

// Retro-reflective spatial phase of meta-atom (q, v), not wrapped.
double spatial_phase(const IncidenceGeometry& g, const StmmConfig& s, int q, int v);
double spatial_phase_wrapped(const IncidenceGeometry& g, const StmmConfig& s, int q, int v);

}  // namespace stmm
