#include "stmm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stmm/capacity.hpp"
#include "stmm/numeric.hpp"
#include "stmm/parallel.hpp"
#include "stmm/reflection.hpp"
#include "stmm/rng.hpp"

namespace stmm {

PointResult evaluate_point(const Scenario& sc, IsiEstimator& isi, const EvalRequest& req) {
  const Scenario r = sc.resolved();
  const double kappa = r.effective_kappa();
  PointResult p;
  p.af_sq = std::norm(array_factor_2d({r.geometry, r.stmm, kappa}));
  p.squint = squint_angle(r.geometry.theta(), kappa);
  p.sigma_theta = std::sqrt(r.csi.sigma_theta_sq);
  const double snr_d = snr_downlink(r.link, r.geometry);
  double snr_u = 0.0;
  if (req.regime) {
    p.regime = classify_regime(r.geometry, r.stmm, r.cpm, r.link, isi);
    snr_u = p.regime.snr_or_sinr;
  }
  const auto se = spectral_efficiency(snr_d, snr_u, r.link.mu);
  p.eta_d = se.eta_d;
  p.eta_u = se.eta_u;
  p.eta_total = se.eta_total;
  if (req.csi) p.csi = csi_loss_factor(r.geometry, r.stmm, kappa, r.csi);
  return p;
}

Scenario with_parameter(const Scenario& sc, std::string_view parameter, double value) {
  Scenario s = sc;
  if (parameter == "kappa") {
    s.kappa = value;
  } else if (parameter == "theta") {
    s.geometry = s.geometry.with_theta(deg_to_rad(value));
  } else if (parameter == "distance") {
    s.geometry = s.geometry.with_distance(value);
  } else if (parameter == "stmm_side") {
    s.stmm.m_ux = s.stmm.m_uy = static_cast<int>(std::lround(value));
  } else if (parameter == "siso_snr") {
    s.link.tx_power = tx_power_for_siso_snr(from_db(value), s.link.noise_power_master, s.geometry);
  } else if (parameter == "mu") {
    s.link.mu = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + std::string(parameter) + "'");
  }
  return s;
}

CsvTable run_sweep(const Scenario& sc, std::uint64_t seed) {
  if (!sc.sweep) throw ConfigError("config has no [sweep] section");
  sc.validate();
  const SweepConfig& sw = *sc.sweep;
  const auto grid = sw.grid();
  auto wants = [&](const char* o) { return std::find(sw.outputs.begin(), sw.outputs.end(), o) != sw.outputs.end(); };

  std::vector<std::string> cols{sw.parameter};
  for (const auto& o : sw.outputs) {
    cols.push_back(o);
    if (o == "squint_deg") cols.push_back("evanescent");
    if (o == "csi_loss") cols.push_back("ci_halfwidth");
    if (o == "regime") cols.push_back("snr_db");
  }
  EvalRequest req;
  req.regime = wants("eta_u") || wants("eta_total") || wants("regime");
  req.csi = wants("csi_loss");

  IsiOptions iso;
  iso.seed = seed;
  IsiEstimator isi(iso);
  Scenario base = sc;
  base.csi.seed = CounterRng(seed).substream(sc.csi.seed).next_u64();

  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Scenario pt = with_parameter(base, sw.parameter, grid[i]);
    pt.validate();
    const PointResult r = evaluate_point(pt, isi, req);
    std::vector<std::string> row{format_double(grid[i])};
    for (const auto& o : sw.outputs) {
      if (o == "af_sq_db") row.push_back(format_double(to_db(r.af_sq)));
      if (o == "squint_deg") {
        row.push_back(r.squint ? format_double(rad_to_deg(*r.squint)) : "nan");
        row.push_back(r.squint ? "0" : "1");
      }
      if (o == "eta_d") row.push_back(format_double(r.eta_d));
      if (o == "eta_u") row.push_back(format_double(r.eta_u));
      if (o == "eta_total") row.push_back(format_double(r.eta_total));
      if (o == "regime") {
        row.emplace_back(to_string(r.regime.regime));
        row.push_back(format_double(to_db(r.regime.snr_or_sinr)));
      }
      if (o == "csi_loss") {
        row.push_back(format_double(r.csi.mean));
        row.push_back(format_double(r.csi.ci_halfwidth));
      }
      if (o == "sigma_theta_deg") row.push_back(format_double(rad_to_deg(r.sigma_theta)));
    }
    rows[i] = std::move(row);
  });
  CsvTable t(cols);
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

namespace {

const std::vector<std::string> names{"fig5", "fig6", "fig7", "fig8a", "fig8b", "fig9a", "fig9b", "fig10"};

constexpr double carrier = 30e9;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

std::string tag(double x) {
  std::ostringstream os;
  os << std::lround(x);
  return os.str();
}

// Scenario at the common operating point: 30 GHz, phi = 0, binary
// rectangular CPFSK with h = 1, B_tot = B_u / mu.
Scenario base_scenario(double theta_deg, int side, double distance) {
  Scenario s;
  s.geometry = IncidenceGeometry(deg_to_rad(theta_deg), 0.0, distance, carrier);
  s.stmm = {side, side, {}, {}, Architecture::A};
  s.cpm = CpmConfig{};
  s.link.noise_power_master = 1.0;
  s.link.noise_power_slave = 1.0;
  s.link.mu = 0.5;
  s.derive_total_bandwidth = true;
  return s;
}

void set_siso_snr(Scenario& s, double db) {
  s.link.tx_power = tx_power_for_siso_snr(from_db(db), s.link.noise_power_master, s.geometry);
}

// Literal reading of the closed form with pi/2 in place of pi/4.
double af_sq_half_reading(double theta, double kappa, int m) {
  const double u = (pi / 2.0) * kappa * std::cos(theta);
  if (std::abs(std::sin(u)) < 1e-8) return 1.0;
  const double r = std::sin(m * u) / (m * std::sin(u));
  return r * r;
}

PresetOutput fig5() {
  PresetOutput out{"fig5", {}, {}};
  const auto kappas = linspace(0.0, 0.06, 121);
  for (double th : {90.0, 30.0})
    for (int side : {100, 200}) {
      CsvTable t({"kappa", "af_sq_db_uncompensated", "af_sq_db_compensated", "af_sq_db_linear", "af_sq_db_half_reading"});
      const auto g = IncidenceGeometry(deg_to_rad(th), 0.0, 100.0, carrier);
      const StmmConfig s{side, side, {}, {}, Architecture::Uncompensated};
      for (double k : kappas)
        t.add_numbers({k, to_db(std::norm(array_factor_2d({g, s, k}))), 0.0,
                       to_db(array_factor_1d(g.theta(), k, side)), to_db(af_sq_half_reading(g.theta(), k, side))});
      out.files.emplace_back("fig5_theta" + tag(th) + "_m" + tag(side) + ".csv", std::move(t));
    }
  return out;
}

PresetOutput fig6() {
  PresetOutput out{"fig6", {}, {}};
  const auto kappas = linspace(-0.1, 0.1, 201);
  for (double th : {5.0, 10.0, 20.0, 30.0, 45.0, 60.0, 90.0}) {
    CsvTable t({"kappa", "squint_deg", "evanescent"});
    for (double k : kappas) {
      const auto a = squint_angle(deg_to_rad(th), k);
      t.add_row({format_double(k), a ? format_double(rad_to_deg(*a)) : "nan", a ? "0" : "1"});
    }
    out.files.emplace_back("fig6_theta" + tag(th) + ".csv", std::move(t));
  }
  return out;
}

PresetOutput fig7() {
  PresetOutput out{"fig7", {}, {}};
  CsvTable t({"theta_deg", "kappa", "squint_deg", "evanescent"});
  for (int i = 1; i <= 90; ++i)
    for (double k : linspace(-0.1, 0.1, 81)) {
      const auto a = squint_angle(deg_to_rad(i), k);
      t.add_row({std::to_string(i), format_double(k), a ? format_double(rad_to_deg(*a)) : "nan", a ? "0" : "1"});
    }
  out.files.emplace_back("fig7_map.csv", std::move(t));
  return out;
}

PresetOutput fig8(int side, const std::string& name, std::uint64_t seed) {
  PresetOutput out{name, {}, {}};
  const auto kappas = linspace(0.001, 0.06, 60);
  IsiOptions iso;
  iso.seed = seed;
  IsiEstimator isi(iso);
  for (double th : {30.0, 60.0})
    for (Architecture law : {Architecture::A, Architecture::B, Architecture::Uncompensated}) {
      Scenario s = base_scenario(th, side, 100.0);
      s.stmm.architecture = law;
      s.link.n_master = 512;
      s.link.m_d = 32;
      set_siso_snr(s, -30.0);
      std::vector<std::vector<double>> rows(kappas.size());
      std::vector<std::string> regimes(kappas.size());
      parallel_for(kappas.size(), [&](std::size_t i) {
        Scenario p = s;
        p.kappa = kappas[i];
        const PointResult r = evaluate_point(p, isi, {true, false});
        rows[i] = {kappas[i], r.eta_u, to_db(r.regime.snr_or_sinr), r.regime.af_sq, r.regime.isi_power.value_or(NAN),
                   r.regime.isi_ci.value_or(NAN)};
        regimes[i] = std::string(to_string(r.regime.regime));
      });
      CsvTable t({"kappa", "eta_u", "snr_db", "array_gain", "isi_power", "isi_ci", "regime"});
      for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> row;
        for (double x : rows[i]) row.push_back(format_double(x));
        row.push_back(regimes[i]);
        t.add_row(std::move(row));
      }
      out.files.emplace_back(name + "_theta" + tag(th) + "_" + std::string(to_string(law)) + ".csv", std::move(t));
    }
  return out;
}

PresetOutput fig9(int side, double kappa, const std::string& name, std::uint64_t seed) {
  PresetOutput out{name, {}, {}};
  const auto snrs = linspace(-40.0, 0.0, 41);
  IsiOptions iso;
  iso.seed = seed;
  IsiEstimator isi(iso);
  std::vector<std::vector<double>> rows(snrs.size());
  parallel_for(snrs.size(), [&](std::size_t i) {
    Scenario s = base_scenario(30.0, side, 100.0);
    s.kappa = kappa;
    s.link.n_master = 64;
    s.link.m_d = 32;
    set_siso_snr(s, snrs[i]);
    s.csi.estimator = CsiEstimator::CrlbAttained;
    s.csi.mc_samples = 100000;
    s.csi.seed = CounterRng(seed).substream(i).next_u64();
    const Scenario r = s.resolved();

    Scenario unc = r;
    unc.stmm.architecture = Architecture::Uncompensated;
    const double mu = r.link.mu;
    const double snr_nb = snr_uplink(r.link, r.geometry, r.stmm, r.cpm, 1.0).snr;
    const double snr_unc = classify_regime(unc.geometry, unc.stmm, unc.cpm, unc.link, isi).snr_or_sinr;
    const CsiLoss loss = csi_loss_factor(r.geometry, r.stmm, kappa, r.csi);
    const double ook = ook_baseline_se(r.link, r.geometry, r.stmm, r.cpm, r.csi);
    rows[i] = {snrs[i],
               mu * std::log2(1.0 + snr_nb),
               mu * std::log2(1.0 + snr_unc),
               mu * std::log2(1.0 + snr_nb * loss.mean),
               ook,
               rad_to_deg(std::sqrt(r.csi.sigma_theta_sq)),
               loss.mean,
               loss.ci_halfwidth,
               loss.truncation_rate};
  });
  CsvTable t({"siso_snr_db", "eta_perfect_csi", "eta_uncompensated", "eta_imperfect_csi", "eta_ook",
              "sigma_theta_deg", "csi_loss", "ci_halfwidth", "truncation_rate"});
  for (const auto& r : rows) t.add_numbers(r);
  out.files.emplace_back(name + "_curves.csv", std::move(t));
  return out;
}

PresetOutput fig10() {
  PresetOutput out{"fig10", {}, {}};
  const auto mus = linspace(0.01, 0.99, 99);
  CsvTable best({"m_side", "distance_m", "mu_star", "eta_star", "boundary"});
  for (int side : {100, 200})
    for (double d : {50.0, 100.0}) {
      // SISO SNR of -30 dB at 100 m; the transmit power is then held fixed.
      Scenario s = base_scenario(30.0, side, 100.0);
      s.link.n_master = 512;
      s.link.m_d = 32;
      s.kappa = 0.01;
      set_siso_snr(s, -30.0);
      s.geometry = s.geometry.with_distance(d);
      const Scenario r = s.resolved();
      const double snr_d = snr_downlink(r.link, r.geometry);
      const double tilde = snr_uplink(r.link, r.geometry, r.stmm, r.cpm, 1.0).tilde;
      CsvTable t({"mu", "eta_d", "eta_u", "eta_total"});
      for (double mu : mus) {
        const auto se = spectral_efficiency(snr_d, tilde / mu, mu);
        t.add_numbers({mu, se.eta_d, se.eta_u, se.eta_total});
      }
      out.files.emplace_back("fig10_m" + tag(side) + "_d" + tag(d) + ".csv", std::move(t));
      const OptimalMu o = optimal_mu(snr_d, tilde);
      best.add_numbers({static_cast<double>(side), d, o.mu, eta_of_mu(snr_d, tilde, o.mu), o.boundary ? 1.0 : 0.0});
    }
  out.files.emplace_back("fig10_optimal_mu.csv", std::move(best));
  return out;
}

std::string plot_script(const PresetOutput& p) {
  std::ostringstream os;
  os << "# gnuplot -persist " << p.name << ".gp\n";
  os << "set datafile separator ','\nset key autotitle columnhead\nset grid\n";
  for (const auto& [file, table] : p.files) {
    const auto& cols = table.columns();
    os << "\nset title '" << file << "'\n";
    if (file.find("map") != std::string::npos) {
      os << "set view map\nsplot '" << file << "' using 1:2:3 with points palette pt 5 ps 0.5\n";
      continue;
    }
    os << "plot";
    bool first = true;
    for (std::size_t c = 1; c < cols.size(); ++c) {
      if (cols[c] == "regime" || cols[c] == "evanescent" || cols[c].find("ci") != std::string::npos) continue;
      os << (first ? " " : ", \\\n     ") << "'" << file << "' using 1:" << c + 1 << " with lines";
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

const std::vector<std::string>& preset_names() { return names; }

bool is_preset(std::string_view name) { return std::find(names.begin(), names.end(), name) != names.end(); }

PresetOutput run_preset(std::string_view name, std::uint64_t seed) {
  PresetOutput out;
  if (name == "fig5")
    out = fig5();
  else if (name == "fig6")
    out = fig6();
  else if (name == "fig7")
    out = fig7();
  else if (name == "fig8a")
    out = fig8(100, "fig8a", seed);
  else if (name == "fig8b")
    out = fig8(200, "fig8b", seed);
  else if (name == "fig9a")
    out = fig9(100, 0.01, "fig9a", seed);
  else if (name == "fig9b")
    out = fig9(200, 0.02, "fig9b", seed);
  else if (name == "fig10")
    out = fig10();
  else
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  out.plot_script = plot_script(out);
  return out;
}

void write_preset(const PresetOutput& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [file, table] : out.files) table.save(dir / file);
  std::ofstream os(dir / (out.name + ".gp"), std::ios::binary);
  if (!os) throw std::runtime_error("cannot write plot script in " + dir.string());
  os << out.plot_script;
}

}  // namespace stmm
