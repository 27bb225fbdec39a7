#include <CLI11.hpp>

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "stmm/experiments.hpp"
#include "stmm/numeric.hpp"
#include "stmm/oracle.hpp"
#include "stmm/parallel.hpp"
#include "stmm/reflection.hpp"
#include "stmm/scenario.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_config = 3;

struct Args {
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";
  unsigned threads = 0;
  bool exact_phase = false;
  std::string name;
  std::filesystem::path config;
};

int cmd_preset(const Args& a) {
  if (!stmm::is_preset(a.name)) {
    std::cerr << "unknown preset '" << a.name << "'; choose one of:";
    for (const auto& n : stmm::preset_names()) std::cerr << ' ' << n;
    std::cerr << '\n';
    return exit_usage;
  }
  const auto out = stmm::run_preset(a.name, a.seed);
  stmm::write_preset(out, a.out);
  for (const auto& [file, table] : out.files) std::cout << (a.out / file).string() << '\n';
  std::cout << (a.out / (out.name + ".gp")).string() << '\n';
  return 0;
}

stmm::Scenario load_checked(const Args& a) {
  stmm::Scenario sc = stmm::load_scenario(a.config);
  if (a.exact_phase) sc.csi.exact_phase = true;
  auto base = sc;
  base.sweep.reset();
  base.validate();
  return sc;
}

int cmd_validate(const Args& a) {
  const auto sc = load_checked(a);
  if (sc.sweep) sc.sweep->validate();
  std::cout << stmm::serialize_scenario(sc.resolved());
  return 0;
}

int cmd_sweep(const Args& a) {
  const auto sc = load_checked(a);
  if (!sc.sweep) {
    std::cerr << "error: " << a.config.string() << " has no [sweep] section\n";
    return exit_usage;
  }
  try {
    sc.sweep->validate();
  } catch (const stmm::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const auto table = stmm::run_sweep(sc, a.seed);
  std::filesystem::create_directories(a.out);
  const auto path = a.out / (a.config.stem().string() + "_sweep.csv");
  table.save(path);
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_oracle(const Args& a) {
  const auto sc = load_checked(a);
  const stmm::WaveformScenario w = sc.waveform();
  w.validate();
  const auto stream = stmm::SymbolStream::random(w.cpm.alphabet_m, w.required_symbols(), a.seed);
  const auto rec = stmm::simulate_rx(w, stream, a.seed, sc.oracle.noise);
  std::filesystem::create_directories(a.out);
  const auto stem = a.config.stem().string();
  const auto iq = a.out / (stem + ".iq");
  stmm::write_iq(iq, rec);

  const auto est = stmm::empirical_snr(w, stream, sc.oracle.noise, sc.oracle.trials, a.seed);
  const double af_sq = w.law == stmm::Architecture::Uncompensated
                           ? std::norm(stmm::array_factor_2d({w.geometry, w.stmm, stmm::kappa_of(w.cpm, w.geometry.carrier())}))
                           : 1.0;
  const double analytic = stmm::snr_uplink(w.link, w.geometry, w.stmm, w.cpm, af_sq).snr;
  stmm::CsvTable t({"law", "samples", "sample_rate_hz", "empirical_snr_db", "coherent_snr_db", "ci_halfwidth",
                    "analytic_snr_db", "analytic_af_sq_db", "gain_db", "trials"});
  t.add_row({std::string(stmm::to_string(w.law)), std::to_string(rec.samples.size()), stmm::format_double(rec.sample_rate),
             stmm::format_double(stmm::to_db(est.value)), stmm::format_double(stmm::to_db(est.coherent_value)),
             stmm::format_double(est.ci_halfwidth), stmm::format_double(stmm::to_db(analytic)),
             stmm::format_double(stmm::to_db(af_sq)), stmm::format_double(stmm::to_db(stmm::empirical_gain(rec, w))),
             std::to_string(est.trials)});
  const auto csv = a.out / (stem + "_snr.csv");
  t.save(csv);
  std::cout << iq.string() << '\n' << csv.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time modulated metasurface link simulator"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--seed", a.seed, "Seed for every Monte-Carlo draw");
  app.add_option("--out", a.out, "Output directory");
  app.add_option("--threads", a.threads, "Worker threads (0 = all cores)");
  app.add_flag("--exact-phase", a.exact_phase, "Exact phase error in the CSI loss");

  auto* preset = app.add_subcommand("preset", "Write the CSV files and plot script of a figure");
  preset->add_option("name", a.name, "fig5, fig6, fig7, fig8a, fig8b, fig9a, fig9b or fig10")->required();
  auto* sweep = app.add_subcommand("sweep", "Run the [sweep] of a config file");
  sweep->add_option("config", a.config)->required();
  auto* validate = app.add_subcommand("validate", "Check a config file and print it resolved");
  validate->add_option("config", a.config)->required();
  auto* oracle = app.add_subcommand("oracle", "Simulate the received waveform of a config file");
  oracle->add_option("config", a.config)->required();
  for (auto* sub : {preset, sweep, validate, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }
  stmm::set_thread_count(a.threads);

  try {
    if (*preset) return cmd_preset(a);
    if (*sweep) return cmd_sweep(a);
    if (*validate) return cmd_validate(a);
    if (*oracle) return cmd_oracle(a);
  } catch (const stmm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_usage;
}
