#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stmm/isi.hpp"
#include "stmm/scenario.hpp"

namespace stmm {

// Column-major table with a header row; numbers are written in shortest
// round-trip form.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add_row(std::vector<std::string> row);
  void add_numbers(const std::vector<double>& row);
  void write(std::ostream& os) const;
  void save(const std::filesystem::path& path) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::vector<double> column(std::string_view name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct PointResult {
  double af_sq = 1.0;
  std::optional<double> squint;
  double eta_d = 0.0;
  double eta_u = 0.0;
  double eta_total = 0.0;
  RegimeReport regime;
  CsiLoss csi;
  double sigma_theta = 0.0;
};

struct EvalRequest {
  bool regime = true;
  bool csi = false;
};

// Evaluates all observables at one resolved scenario.
PointResult evaluate_point(const Scenario& sc, IsiEstimator& isi, const EvalRequest& req);

// Returns a copy of sc with the named parameter set to value.
Scenario with_parameter(const Scenario& sc, std::string_view parameter, double value);

CsvTable run_sweep(const Scenario& sc, std::uint64_t seed);

const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);

struct PresetOutput {
  std::string name;
  std::vector<std::pair<std::string, CsvTable>> files;
  std::string plot_script;
};

// Builds every CSV of a figure preset. Throws std::invalid_argument on an
// unknown name.
PresetOutput run_preset(std::string_view name, std::uint64_t seed);
void write_preset(const PresetOutput& out, const std::filesystem::path& dir);

}  // namespace stmm
