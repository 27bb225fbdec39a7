#include "stmm/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "stmm/numeric.hpp"

namespace stmm {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> sweep_parameters{"kappa", "theta", "distance", "stmm_side", "siso_snr", "mu"};
const std::set<std::string> sweep_outputs{"af_sq_db", "squint_deg", "eta_d",   "eta_u",
                                          "eta_total", "regime",    "csi_loss", "sigma_theta_deg"};

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  T v{};
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || end != t.data() + t.size() || t.empty())
    throw ConfigError(where + ": '" + text + "' is not a valid number");
  return v;
}

bool parse_bool(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(where + ": '" + text + "' is not a boolean");
}

// Reads one section and complains about keys it does not know.
class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto c = root.get_child_optional(name_)) tree_ = *c;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return tree_.get_child_optional(key).has_value();
  }
  std::string str(const std::string& key) {
    seen_.insert(key);
    return trim(tree_.get<std::string>(key));
  }
  template <class T>
  std::optional<T> num(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return parse_number<T>(name_ + "." + key, tree_.get<std::string>(key));
  }
  std::optional<bool> flag(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return parse_bool(name_ + "." + key, tree_.get<std::string>(key));
  }
  template <class F>
  auto wrap(const std::string& key, F&& f) {
    try {
      return f(str(key));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(name_ + "." + key + ": " + e.what());
    }
  }
  void finish() const {
    for (const auto& kv : tree_)
      if (!seen_.count(kv.first)) throw ConfigError("unknown key '" + kv.first + "' in [" + name_ + "]");
  }

 private:
  std::string name_;
  pt::ptree tree_;
  std::set<std::string> seen_;
};

}  // namespace

void SweepConfig::validate() const {
  if (!sweep_parameters.count(parameter)) throw ConfigError("unknown sweep parameter '" + parameter + "'");
  if (points < 2) throw ConfigError("a sweep needs at least 2 points");
  if (!(start < stop)) throw ConfigError("sweep range needs start < stop");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ConfigError("sweep bounds must be finite");
  if (scale == SweepScale::Log && !(start > 0.0)) throw ConfigError("log sweeps need a positive start");
  if (outputs.empty()) throw ConfigError("a sweep needs at least one output");
  for (const auto& o : outputs)
    if (!sweep_outputs.count(o)) throw ConfigError("unknown sweep output '" + o + "'");
  auto range = [&](double lo, double hi, bool lo_open, bool hi_open) {
    const bool ok_lo = lo_open ? start > lo : start >= lo;
    const bool ok_hi = hi_open ? stop < hi : stop <= hi;
    if (!ok_lo || !ok_hi) throw ConfigError("sweep range outside the valid domain of " + parameter);
  };
  if (parameter == "kappa") range(-1.0, 1.0, true, true);
  if (parameter == "theta") range(0.0, 90.0, false, false);
  if (parameter == "distance") range(0.0, INFINITY, true, true);
  if (parameter == "stmm_side") range(1.0, INFINITY, false, true);
  if (parameter == "mu") range(0.0, 1.0, true, true);
}

std::vector<double> SweepConfig::grid() const {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    g[i] = scale == SweepScale::Linear ? start + f * (stop - start) : start * std::pow(stop / start, f);
  }
  g.back() = stop;
  return g;
}

double Scenario::effective_kappa() const { return kappa.value_or(kappa_of(cpm, geometry.carrier())); }

Scenario Scenario::resolved() const {
  Scenario r = *this;
  try {
    if (kappa && *kappa > 0.0) r.cpm.symbol_time = symbol_time_for_kappa(cpm.h, *kappa, geometry.carrier());
    if (derive_total_bandwidth) r.link.total_bandwidth = occupied_bandwidth(r.cpm).hz / r.link.mu;
    if (csi.estimator == CsiEstimator::CrlbAttained) {
      const double s = crlb_sigma_theta(geometry.theta(), siso_snr(r.link, geometry), link.n_master, link.m_d);
      r.csi.sigma_theta_sq = s * s;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return r;
}

void Scenario::validate() const {
  try {
    stmm.validate();
    cpm.validate();
    if (kappa && (!std::isfinite(*kappa) || std::abs(*kappa) >= 1.0)) throw ConfigError("kappa must satisfy |kappa| < 1");
    const Scenario r = resolved();
    r.link.validate();
    if (oracle.oversampling < 16.0) throw ConfigError("oracle oversampling must be >= 16");
    if (oracle.symbols < 1 || oracle.trials < 1) throw ConfigError("oracle symbols and trials must be >= 1");
    if (csi.mc_samples < 1) throw ConfigError("csi.mc_samples must be >= 1");
    if (!(csi.sigma_theta_sq >= 0.0)) throw ConfigError("csi sigma must be >= 0");
    if (sweep) sweep->validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

WaveformScenario Scenario::waveform() const {
  const Scenario r = resolved();
  WaveformScenario w{r.geometry, r.stmm, r.cpm, r.link, r.oracle.law, r.oracle.oversampling, r.oracle.symbols,
                     r.oracle.downlink, ChannelRealization::deterministic(r.geometry)};
  return w;
}

Scenario parse_scenario(std::istream& is) {
  pt::ptree root;
  try {
    pt::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  static const std::set<std::string> sections{"geometry", "stmm", "cpm", "link", "csi", "sweep", "oracle"};
  for (const auto& kv : root) {
    if (!sections.count(kv.first)) throw ConfigError("unknown section [" + kv.first + "]");
    if (kv.second.empty() && !kv.second.data().empty()) throw ConfigError("key '" + kv.first + "' outside any section");
  }

  Scenario sc;
  {
    Section s(root, "geometry");
    for (const char* a : {"theta", "phi"})
      if (s.has(std::string(a) + "_deg") && s.has(std::string(a) + "_rad"))
        throw ConfigError(std::string("geometry: give ") + a + "_deg or " + a + "_rad, not both");
    double theta = sc.geometry.theta(), phi = sc.geometry.phi();
    if (auto v = s.num<double>("theta_deg")) theta = deg_to_rad(*v);
    if (auto v = s.num<double>("theta_rad")) theta = *v;
    if (auto v = s.num<double>("phi_deg")) phi = deg_to_rad(*v);
    if (auto v = s.num<double>("phi_rad")) phi = *v;
    const double d = s.num<double>("distance_m").value_or(sc.geometry.distance());
    const double f = s.num<double>("carrier_hz").value_or(sc.geometry.carrier());
    s.finish();
    try {
      sc.geometry = IncidenceGeometry(theta, phi, d, f);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("geometry: ") + e.what());
    }
  }
  {
    Section s(root, "stmm");
    if (auto v = s.num<int>("m_ux")) sc.stmm.m_ux = *v;
    if (auto v = s.num<int>("m_uy")) sc.stmm.m_uy = *v;
    if (auto v = s.num<double>("spacing_x_m")) sc.stmm.spacing_dx = *v;
    if (auto v = s.num<double>("spacing_y_m")) sc.stmm.spacing_dy = *v;
    if (s.has("architecture")) sc.stmm.architecture = s.wrap("architecture", [](const std::string& x) { return parse_architecture(x); });
    s.finish();
  }
  {
    Section s(root, "cpm");
    if (auto v = s.num<double>("h")) sc.cpm.h = *v;
    if (auto v = s.num<int>("alphabet")) sc.cpm.alphabet_m = *v;
    if (auto v = s.num<int>("memory")) sc.cpm.memory_l = *v;
    if (auto v = s.num<double>("symbol_time_s")) sc.cpm.symbol_time = *v;
    if (auto v = s.num<double>("kappa")) sc.kappa = *v;
    if (s.has("psf")) sc.cpm.psf = s.wrap("psf", [](const std::string& x) { return parse_pulse_shape(x); });
    if (auto v = s.num<double>("g")) sc.cpm.energy_factor = *v;
    if (auto v = s.num<double>("gaussian_bt")) sc.cpm.gaussian_bt = *v;
    s.finish();
  }
  {
    Section s(root, "link");
    if (auto v = s.num<int>("n_master")) sc.link.n_master = *v;
    if (auto v = s.num<int>("m_d")) sc.link.m_d = *v;
    if (auto v = s.num<double>("noise_power_w")) sc.link.noise_power_master = *v;
    if (auto v = s.num<double>("noise_power_slave_w")) sc.link.noise_power_slave = *v;
    if (auto v = s.num<double>("mu")) sc.link.mu = *v;
    if (auto v = s.num<double>("total_bandwidth_hz")) {
      sc.link.total_bandwidth = *v;
      sc.derive_total_bandwidth = false;
    }
    const auto tx = s.num<double>("tx_power_w");
    const auto snr = s.num<double>("siso_snr_db");
    if (tx && snr) throw ConfigError("link: give tx_power_w or siso_snr_db, not both");
    if (tx) sc.link.tx_power = *tx;
    if (snr) sc.link.tx_power = tx_power_for_siso_snr(from_db(*snr), sc.link.noise_power_master, sc.geometry);
    s.finish();
  }
  {
    Section s(root, "csi");
    if (s.has("estimator")) sc.csi.estimator = s.wrap("estimator", [](const std::string& x) { return parse_csi_estimator(x); });
    if (s.has("sigma_theta_deg") && s.has("sigma_theta_sq_rad2"))
      throw ConfigError("csi: give sigma_theta_deg or sigma_theta_sq_rad2, not both");
    if (auto v = s.num<double>("sigma_theta_deg")) {
      const double r = deg_to_rad(*v);
      sc.csi.sigma_theta_sq = r * r;
    }
    if (auto v = s.num<double>("sigma_theta_sq_rad2")) sc.csi.sigma_theta_sq = *v;
    if (auto v = s.num<std::size_t>("mc_samples")) sc.csi.mc_samples = *v;
    if (auto v = s.num<std::uint64_t>("seed")) sc.csi.seed = *v;
    if (auto v = s.flag("exact_phase")) sc.csi.exact_phase = *v;
    s.finish();
  }
  if (root.get_child_optional("sweep")) {
    Section s(root, "sweep");
    SweepConfig sw;
    if (s.has("parameter")) sw.parameter = s.str("parameter");
    if (auto v = s.num<double>("start")) sw.start = *v;
    if (auto v = s.num<double>("stop")) sw.stop = *v;
    if (auto v = s.num<int>("points")) sw.points = *v;
    if (s.has("scale")) {
      const auto x = s.str("scale");
      if (x == "linear")
        sw.scale = SweepScale::Linear;
      else if (x == "log")
        sw.scale = SweepScale::Log;
      else
        throw ConfigError("sweep.scale must be linear or log");
    }
    if (s.has("outputs")) {
      std::stringstream ss(s.str("outputs"));
      std::string item;
      while (std::getline(ss, item, ','))
        if (!trim(item).empty()) sw.outputs.push_back(trim(item));
    }
    s.finish();
    sc.sweep = sw;
  }
  {
    Section s(root, "oracle");
    if (auto v = s.num<double>("oversampling")) sc.oracle.oversampling = *v;
    if (auto v = s.num<int>("symbols")) sc.oracle.symbols = *v;
    if (s.has("law")) sc.oracle.law = s.wrap("law", [](const std::string& x) { return parse_architecture(x); });
    if (s.has("downlink")) sc.oracle.downlink = s.wrap("downlink", [](const std::string& x) { return parse_downlink_waveform(x); });
    if (auto v = s.flag("noise")) sc.oracle.noise = *v;
    if (auto v = s.num<int>("trials")) sc.oracle.trials = *v;
    s.finish();
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  return parse_scenario(is);
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  auto kv = [&os](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto num = [&kv](const char* k, double v) { kv(k, format_double(v)); };
  os << "[geometry]\n";
  num("theta_rad", sc.geometry.theta());
  num("phi_rad", sc.geometry.phi());
  num("distance_m", sc.geometry.distance());
  num("carrier_hz", sc.geometry.carrier());
  os << "\n[stmm]\n";
  kv("m_ux", std::to_string(sc.stmm.m_ux));
  kv("m_uy", std::to_string(sc.stmm.m_uy));
  if (sc.stmm.spacing_dx) num("spacing_x_m", *sc.stmm.spacing_dx);
  if (sc.stmm.spacing_dy) num("spacing_y_m", *sc.stmm.spacing_dy);
  kv("architecture", std::string(to_string(sc.stmm.architecture)));
  os << "\n[cpm]\n";
  num("h", sc.cpm.h);
  kv("alphabet", std::to_string(sc.cpm.alphabet_m));
  kv("memory", std::to_string(sc.cpm.memory_l));
  num("symbol_time_s", sc.cpm.symbol_time);
  if (sc.kappa) num("kappa", *sc.kappa);
  kv("psf", std::string(to_string(sc.cpm.psf)));
  if (sc.cpm.energy_factor) num("g", *sc.cpm.energy_factor);
  num("gaussian_bt", sc.cpm.gaussian_bt);
  os << "\n[link]\n";
  kv("n_master", std::to_string(sc.link.n_master));
  kv("m_d", std::to_string(sc.link.m_d));
  num("tx_power_w", sc.link.tx_power);
  num("noise_power_w", sc.link.noise_power_master);
  num("noise_power_slave_w", sc.link.noise_power_slave);
  num("mu", sc.link.mu);
  if (!sc.derive_total_bandwidth) num("total_bandwidth_hz", sc.link.total_bandwidth);
  os << "\n[csi]\n";
  kv("estimator", std::string(to_string(sc.csi.estimator)));
  num("sigma_theta_sq_rad2", sc.csi.sigma_theta_sq);
  kv("mc_samples", std::to_string(sc.csi.mc_samples));
  kv("seed", std::to_string(sc.csi.seed));
  kv("exact_phase", sc.csi.exact_phase ? "true" : "false");
  if (sc.sweep) {
    os << "\n[sweep]\n";
    kv("parameter", sc.sweep->parameter);
    num("start", sc.sweep->start);
    num("stop", sc.sweep->stop);
    kv("points", std::to_string(sc.sweep->points));
    kv("scale", sc.sweep->scale == SweepScale::Linear ? "linear" : "log");
    std::string outs;
    for (const auto& o : sc.sweep->outputs) outs += (outs.empty() ? "" : ",") + o;
    kv("outputs", outs);
  }
  os << "\n[oracle]\n";
  num("oversampling", sc.oracle.oversampling);
  kv("symbols", std::to_string(sc.oracle.symbols));
  kv("law", std::string(to_string(sc.oracle.law)));
  kv("downlink", std::string(to_string(sc.oracle.downlink)));
  kv("noise", sc.oracle.noise ? "true" : "false");
  kv("trials", std::to_string(sc.oracle.trials));
  return os.str();
}

}  // namespace stmm
