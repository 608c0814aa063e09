#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sphdec/experiment.hpp"

using namespace sphdec;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

ExperimentSpec small_oracle_spec() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::OracleCheck;
  spec.t_range = {2};
  spec.snr_db = {10.0};
  spec.qam = 4;
  spec.trials = 30;
  spec.seed = 5;
  spec.workers = 1;
  return spec;
}

}  // namespace

TEST_CASE("finalize_spec applies per-kind defaults") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::ComplexityVsSnr;
  finalize_spec(spec);
  CHECK(spec.t_range == std::vector<int>{8});
  CHECK(spec.snr_db == std::vector<double>{14.0, 18.0, 22.0, 26.0});
  CHECK(spec.qam == 64);
  CHECK(spec.trials == 1000);
  CHECK(spec.tx_per_matrix == 1);
  CHECK(spec.orderings == std::vector<Ordering>{Ordering::Plain, Ordering::QrSort});
  CHECK(spec.engines == std::vector<Engine>{Engine::DepthFirst, Engine::Dijkstra});

  ExperimentSpec total;
  total.kind = ExperimentKind::Total10Tx;
  finalize_spec(total);
  CHECK(total.tx_per_matrix == 10);
  CHECK(total.t_range.size() == 7);
}

TEST_CASE("finalize_spec names the offending field") {
  const auto field_of = [](ExperimentSpec spec) {
    try {
      finalize_spec(spec);
    } catch (const ConfigError& e) {
      return e.field;
    }
    return std::string("no error");
  };

  ExperimentSpec bad_qam = small_oracle_spec();
  bad_qam.qam = 5;
  CHECK(field_of(bad_qam) == "qam");

  ExperimentSpec bad_trials = small_oracle_spec();
  bad_trials.trials = -2;
  CHECK(field_of(bad_trials) == "trials");

  ExperimentSpec bad_t = small_oracle_spec();
  bad_t.t_range = {0};
  CHECK(field_of(bad_t) == "t-range");

  ExperimentSpec too_big = small_oracle_spec();
  too_big.qam = 64;
  too_big.t_range = {4};  // 64^4 candidates: too much for the oracle
  CHECK(field_of(too_big) == "t-range");

  ExperimentSpec bad_tx = small_oracle_spec();
  bad_tx.tx_per_matrix = -1;
  CHECK(field_of(bad_tx) == "tx-per-matrix");
}

TEST_CASE("oracle-check reports full agreement") {
  const RunReport report = run(small_oracle_spec());
  const auto ls = lines_of(report.csv);
  REQUIRE(ls.size() > 1);
  CHECK(ls[0] ==
        "t,snr_db,qam,method,pre_mults_divs,search_mults_divs,nodes,retries,queue_peak,"
        "oracle_match");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields_of(ls[i]);
    REQUIRE(f.size() == 10);
    CHECK(f[9] == "1");
  }
  // 4 orderings x 2 engines on one grid point.
  CHECK(ls.size() == 1 + 8);
}

TEST_CASE("reports are deterministic across worker-pool sizes") {
  ExperimentSpec spec = small_oracle_spec();
  spec.trials = 40;
  spec.workers = 1;
  const std::string a = run(spec).csv;
  spec.workers = 4;
  const std::string b = run(spec).csv;
  CHECK(a == b);
  spec.workers = 3;
  const std::string c = run(spec).csv;
  CHECK(a == c);
}

TEST_CASE("audited run performs no uncounted complex arithmetic") {
  ExperimentSpec spec = small_oracle_spec();
  spec.audit = true;
  spec.workers = 2;
  const RunReport report = run(spec);
  CHECK(report.audit_violations == 0);
}

TEST_CASE("queue-cdf output is a valid distribution") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::QueueCdf;
  spec.t_range = {3};
  spec.snr_db = {12.0};
  spec.qam = 16;
  spec.trials = 50;
  spec.seed = 11;
  spec.workers = 2;
  const RunReport report = run(spec);
  const auto ls = lines_of(report.csv);
  REQUIRE(ls.size() > 1);
  CHECK(ls[0] == "t,snr_db,qam,method,queue_size,cdf");
  double prev_cdf = 0.0;
  long prev_size = -1;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields_of(ls[i]);
    REQUIRE(f.size() == 6);
    const long size = std::stol(f[4]);
    const double cdf = std::stod(f[5]);
    CHECK(size > prev_size);
    CHECK(cdf >= prev_cdf);
    prev_size = size;
    prev_cdf = cdf;
  }
  CHECK(prev_cdf == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("summarize") {
  ExperimentSpec spec = small_oracle_spec();
  spec.trials = 25;
  const RunReport report = run(spec);

  SUBCASE("baseline ratios are exactly one") {
    const std::string table = summarize(report.csv, 10);
    const auto ls = lines_of(table);
    REQUIRE(ls.size() > 1);
    CHECK(ls[0] == "t,snr_db,qam,method,search_ratio,pre_ratio,total_ratio");
    bool saw_baseline = false;
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const auto f = fields_of(ls[i]);
      REQUIRE(f.size() == 7);
      if (f[3] == "plain-dfs") {
        saw_baseline = true;
        CHECK(f[4] == "1");
        CHECK(f[5] == "1");
        CHECK(f[6] == "1");
      }
    }
    CHECK(saw_baseline);
  }

  SUBCASE("malformed input is rejected") {
    CHECK_THROWS_AS(summarize("bogus header\n1,2,3\n"), ParseError);
    // A report without the plain-dfs baseline cannot be summarized.
    ExperimentSpec no_base = small_oracle_spec();
    no_base.orderings = {Ordering::QrSort};
    no_base.trials = 5;
    CHECK_THROWS_AS(summarize(run(no_base).csv), ParseError);
    CHECK_THROWS_AS(summarize(report.csv, 0), ParseError);
  }
}

TEST_CASE("config text round trip") {
  ExperimentSpec spec;
  apply_config_kv(spec, "experiment", "complexity-vs-snr");
  apply_config_kv(spec, "t-range", "2..4");
  apply_config_kv(spec, "snr", "14,26");
  apply_config_kv(spec, "snr", "18");  // repeated keys append
  apply_config_kv(spec, "qam", "16");
  apply_config_kv(spec, "trials", "12");
  apply_config_kv(spec, "tx-per-matrix", "3");
  apply_config_kv(spec, "orderings", "plain,qrsort");
  apply_config_kv(spec, "engines", "dijkstra");
  apply_config_kv(spec, "seed", "99");
  apply_config_kv(spec, "workers", "2");
  apply_config_kv(spec, "audit", "true");

  CHECK(spec.kind == ExperimentKind::ComplexityVsSnr);
  CHECK(spec.t_range == std::vector<int>{2, 3, 4});
  CHECK(spec.snr_db == std::vector<double>{14.0, 26.0, 18.0});
  CHECK(spec.qam == 16);
  CHECK(spec.trials == 12);
  CHECK(spec.tx_per_matrix == 3);
  CHECK(spec.seed == 99);
  CHECK(spec.workers == 2);
  CHECK(spec.audit);
  REQUIRE(spec.orderings.size() == 2);
  CHECK(spec.engines == std::vector<Engine>{Engine::Dijkstra});

  CHECK_THROWS_AS(apply_config_kv(spec, "bogus-key", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(spec, "trials", "many"), ConfigError);

  const std::string path = "test_config_roundtrip.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "experiment oracle-check\n"
        << "t-range 2\n"
        << "snr 0,10\n"
        << "trials 7\n";
  }
  ExperimentSpec from_file;
  load_config_file(from_file, path);
  std::remove(path.c_str());
  CHECK(from_file.kind == ExperimentKind::OracleCheck);
  CHECK(from_file.t_range == std::vector<int>{2});
  CHECK(from_file.snr_db == std::vector<double>{0.0, 10.0});
  CHECK(from_file.trials == 7);
  CHECK_THROWS_AS(load_config_file(from_file, "does_not_exist.cfg"), ConfigError);
}

TEST_CASE("token parsing round trips") {
  for (const char* token : {"plain", "norm", "norm-desc", "optimal", "qrsort"})
    CHECK(std::string(to_string(parse_ordering(token))) == token);
  for (const char* token : {"dfs", "dijkstra"})
    CHECK(std::string(to_string(parse_engine(token))) == token);
  CHECK(parse_engine("depth-first") == Engine::DepthFirst);
  for (const char* token :
       {"search-complexity-vs-antennas", "preprocess-complexity-vs-antennas", "total-10tx",
        "complexity-vs-snr", "queue-cdf", "oracle-check"})
    CHECK(std::string(to_string(parse_kind(token))) == token);
  CHECK_THROWS_AS(parse_kind("nope"), ConfigError);
  CHECK_THROWS_AS(parse_ordering("nope"), ConfigError);
  CHECK_THROWS_AS(parse_engine("nope"), ConfigError);
  CHECK(method_label(Ordering::QrSort, Engine::Dijkstra) == "qrsort-dijkstra");
}
