// Experiment runner CLI: Monte-Carlo complexity comparisons of sphere
// decoding variants, reported as CSV.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sphdec/experiment.hpp"

namespace {

int run_summarize(const std::string& in_path, int tx_per_matrix, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open report " << in_path << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string table = sphdec::summarize(buf.str(), tx_per_matrix);
  if (out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output " << out_path << "\n";
      return 2;
    }
    out << table;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphere decoder complexity experiments"};
  app.require_subcommand(0, 1);

  std::string experiment, config, out, t_range, snr, orderings, engines;
  std::uint64_t seed = 0;
  int qam = 0, trials = 0, tx_per_matrix = 0, workers = 0;
  bool audit = false;

  auto* exp_opt = app.add_option("--experiment", experiment,
                                 "Experiment kind: search-complexity-vs-antennas, "
                                 "preprocess-complexity-vs-antennas, total-10tx, "
                                 "complexity-vs-snr, queue-cdf, oracle-check");
  auto* config_opt = app.add_option("--config", config, "Flat key-value config file");
  auto* seed_opt = app.add_option("--seed", seed, "Master RNG seed");
  auto* out_opt = app.add_option("--out", out, "CSV output path (default: stdout)");
  auto* t_opt = app.add_option("--t-range", t_range, "Antenna counts, e.g. 2..8 or 2,4,8");
  auto* snr_opt = app.add_option("--snr", snr, "SNR grid in dB, e.g. 14,18,22,26");
  auto* qam_opt = app.add_option("--qam", qam, "Constellation size: 4, 16, 64, 256");
  auto* trials_opt = app.add_option("--trials", trials, "Fading matrices per grid point");
  auto* tx_opt = app.add_option("--tx-per-matrix", tx_per_matrix,
                                "Transmissions per fading matrix");
  auto* ord_opt = app.add_option("--orderings", orderings,
                                 "Comma list of plain, norm, norm-desc, optimal, qrsort");
  auto* eng_opt = app.add_option("--engines", engines, "Comma list of dfs, dijkstra");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads (0 = auto)");
  auto* audit_flag = app.add_flag("--audit", audit, "Audit uncounted complex arithmetic");

  auto* sum = app.add_subcommand("summarize", "Ratio table vs the plain-dfs baseline");
  std::string sum_in, sum_out;
  int sum_tx = 1;
  sum->add_option("--in", sum_in, "Report CSV to summarize")->required();
  sum->add_option("--tx-per-matrix", sum_tx, "Transmissions weighting the total ratio");
  sum->add_option("--out", sum_out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sum->parsed()) return run_summarize(sum_in, sum_tx, sum_out);

    sphdec::ExperimentSpec spec;
    if (config_opt->count()) sphdec::load_config_file(spec, config);
    // Command-line flags override config-file values.
    if (exp_opt->count()) spec.kind = sphdec::parse_kind(experiment);
    if (!exp_opt->count() && !config_opt->count())
      throw sphdec::ConfigError("experiment", "no experiment kind given");
    if (seed_opt->count()) spec.seed = seed;
    if (out_opt->count()) spec.out_path = out;
    if (t_opt->count()) spec.t_range = sphdec::parse_int_list(t_range);
    if (snr_opt->count()) spec.snr_db = sphdec::parse_double_list(snr);
    if (qam_opt->count()) spec.qam = qam;
    if (trials_opt->count()) spec.trials = trials;
    if (tx_opt->count()) spec.tx_per_matrix = tx_per_matrix;
    if (ord_opt->count()) {
      spec.orderings.clear();
      std::istringstream in(orderings);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) spec.orderings.push_back(sphdec::parse_ordering(item));
    }
    if (eng_opt->count()) {
      spec.engines.clear();
      std::istringstream in(engines);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) spec.engines.push_back(sphdec::parse_engine(item));
    }
    if (workers_opt->count()) spec.workers = workers;
    if (audit_flag->count()) spec.audit = true;

    const sphdec::RunReport report = sphdec::run(spec);
    if (spec.out_path.empty()) std::cout << report.csv;
    if (spec.audit)
      std::cerr << "audit: " << report.audit_violations << " uncounted complex operations\n";
    if (spec.audit && report.audit_violations > 0) return 1;
    return 0;
  } catch (const sphdec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sphdec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
