#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphdec/qr.hpp"
#include "sphdec/search.hpp"

namespace sphdec {

enum class ExperimentKind {
  SearchComplexityVsAntennas,
  PreprocessComplexityVsAntennas,
  Total10Tx,
  ComplexityVsSnr,
  QueueCdf,
  OracleCheck,
};

// Experiment grid. Zero/empty fields take per-kind defaults in
// finalize_spec. The same (seed, spec) pair always reproduces the same
// report byte for byte, whatever the worker count: trial k of grid
// point g draws from RNG stream g * trials + k and results merge in
// trial order.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::OracleCheck;
  std::vector<int> t_range;      // antenna counts, t = r, each in 1..16
  std::vector<double> snr_db;
  int qam = 0;                   // constellation size: 4, 16, 64 or 256
  int trials = 0;                // fading matrices per grid point
  int tx_per_matrix = 0;         // transmissions per fading matrix
  std::vector<Ordering> orderings;
  std::vector<Engine> engines;
  std::uint64_t seed = 0;
  std::string out_path;          // optional CSV destination
  int workers = 0;               // 0: hardware concurrency
  bool audit = false;            // audit-scope the decoder calls
};

// Applies per-kind defaults to unset fields and validates everything;
// throws ConfigError naming the offending field.
void finalize_spec(ExperimentSpec& spec);

struct RunReport {
  std::string csv;
  std::uint64_t audit_violations = 0;  // only meaningful when spec.audit
};

// Runs the Monte-Carlo grid and renders the CSV report (also written to
// spec.out_path when set). Every method within a row decodes the same
// (M, x) samples, so ratio comparisons are paired.
RunReport run(const ExperimentSpec& spec);

// Per-grid-point complexity ratios of each method against the plain
// depth-first baseline, from a standard report CSV. tx_per_matrix
// weights the total ratio (preprocessing once, searching tx times).
std::string summarize(const std::string& report_csv, int tx_per_matrix = 1);

ExperimentKind parse_kind(const std::string& token);
Ordering parse_ordering(const std::string& token);
Engine parse_engine(const std::string& token);
const char* to_string(ExperimentKind kind);
const char* to_string(Ordering ordering);
const char* to_string(Engine engine);
std::string method_label(Ordering ordering, Engine engine);

// Config text: one `key value` pair per line, '#' comments, keys named
// like the CLI flags; list-valued keys may repeat to append.
void apply_config_kv(ExperimentSpec& spec, const std::string& key, const std::string& value);
void load_config_file(ExperimentSpec& spec, const std::string& path);

// "2..8", "2,5,7" or a single value; used by --t-range and config.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace sphdec
