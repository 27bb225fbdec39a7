#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stmm/constants.hpp"
#include "stmm/csi.hpp"
#include "stmm/geometry.hpp"
#include "stmm/link.hpp"
#include "stmm/modulation.hpp"
#include "stmm/oracle.hpp"

namespace stmm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepScale { Linear, Log };

struct SweepConfig {
  // kappa, theta, distance, stmm_side, siso_snr or mu.
  std::string parameter = "kappa";
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  SweepScale scale = SweepScale::Linear;
  // Any of af_sq_db, squint_deg, eta_d, eta_u, eta_total, regime, csi_loss,
  // sigma_theta_deg.
  std::vector<std::string> outputs;

  // Throws ConfigError.
  void validate() const;
  std::vector<double> grid() const;

  bool operator==(const SweepConfig&) const = default;
};

struct OracleSettings {
  double oversampling = 16.0;
  int symbols = 64;
  Architecture law = Architecture::Uncompensated;
  DownlinkWaveform downlink = DownlinkWaveform::ConstantEnvelope;
  bool noise = true;
  int trials = 100;

  bool operator==(const OracleSettings&) const = default;
};

// Everything one experiment needs. Angles are stored in radians; the text
// format uses degrees. The uplink symbol time follows kappa when kappa is
// given. With no explicit total bandwidth, B_tot = B_u / mu.
struct Scenario {
  IncidenceGeometry geometry{pi / 6.0, 0.0, 100.0, 30e9};
  StmmConfig stmm{100, 100, {}, {}, Architecture::A};
  CpmConfig cpm;
  LinkConfig link;
  std::optional<double> kappa;
  bool derive_total_bandwidth = true;
  CsiErrorModel csi;
  std::optional<SweepConfig> sweep;
  OracleSettings oracle;

  // Applies kappa and the derived bandwidth; returns the effective config.
  Scenario resolved() const;
  double effective_kappa() const;
  void validate() const;

  WaveformScenario waveform() const;

  bool operator==(const Scenario&) const = default;
};

// Sectioned key = value text: [geometry] [stmm] [cpm] [link] [csi] [sweep] [oracle].
Scenario parse_scenario(std::istream& is);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& sc);

}  // namespace stmm
