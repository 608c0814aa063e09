#include "sphdec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "sphdec/channel.hpp"

namespace sphdec {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

template <class F>
auto audited(bool on, F&& f) {
  if (on) {
    audit::Scope scope;
    return f();
  }
  return f();
}

struct Method {
  Ordering ordering;
  Engine engine;
  std::size_t ordering_slot;  // index into the per-trial factorization array
};

struct MethodTrial {
  double pre_md = 0.0;     // preprocessing mults+divs, once per fading matrix
  double search_md = 0.0;  // searching mults+divs summed over transmissions
  double nodes = 0.0;
  double retries = 0.0;
  double queue_peak = 0.0;
  int oracle_fails = 0;
  std::vector<std::uint64_t> queue_peaks;  // per decode, QueueCdf only
};

}  // namespace

void finalize_spec(ExperimentSpec& spec) {
  const bool antennas_kind = spec.kind == ExperimentKind::SearchComplexityVsAntennas ||
                             spec.kind == ExperimentKind::PreprocessComplexityVsAntennas ||
                             spec.kind == ExperimentKind::Total10Tx;

  if (spec.t_range.empty()) {
    if (antennas_kind)
      spec.t_range = {2, 3, 4, 5, 6, 7, 8};
    else if (spec.kind == ExperimentKind::OracleCheck)
      spec.t_range = {2, 3};
    else
      spec.t_range = {8};
  }
  if (spec.snr_db.empty()) {
    if (spec.kind == ExperimentKind::ComplexityVsSnr)
      spec.snr_db = {14.0, 18.0, 22.0, 26.0};
    else if (spec.kind == ExperimentKind::OracleCheck)
      spec.snr_db = {0.0, 10.0, 20.0};
    else
      spec.snr_db = {26.0};
  }
  if (spec.qam == 0) spec.qam = spec.kind == ExperimentKind::OracleCheck ? 16 : 64;
  if (spec.trials == 0) spec.trials = 1000;
  if (spec.tx_per_matrix == 0)
    spec.tx_per_matrix = spec.kind == ExperimentKind::Total10Tx ? 10 : 1;
  if (spec.orderings.empty()) {
    switch (spec.kind) {
      case ExperimentKind::SearchComplexityVsAntennas:
      case ExperimentKind::PreprocessComplexityVsAntennas:
        spec.orderings = {Ordering::Plain, Ordering::Norm, Ordering::Optimal,
                          Ordering::QrSort};
        break;
      case ExperimentKind::Total10Tx:
      case ExperimentKind::ComplexityVsSnr:
        spec.orderings = {Ordering::Plain, Ordering::QrSort};
        break;
      case ExperimentKind::QueueCdf:
        spec.orderings = {Ordering::QrSort};
        break;
      case ExperimentKind::OracleCheck:
        spec.orderings = {Ordering::Plain, Ordering::Norm, Ordering::Optimal,
                          Ordering::QrSort};
        break;
    }
  }
  if (spec.engines.empty()) {
    switch (spec.kind) {
      case ExperimentKind::ComplexityVsSnr:
      case ExperimentKind::OracleCheck:
        spec.engines = {Engine::DepthFirst, Engine::Dijkstra};
        break;
      case ExperimentKind::QueueCdf:
        spec.engines = {Engine::Dijkstra};
        break;
      default:
        spec.engines = {Engine::DepthFirst};
        break;
    }
  }

  if (spec.qam != 4 && spec.qam != 16 && spec.qam != 64 && spec.qam != 256)
    throw ConfigError("qam", "constellation size must be 4, 16, 64 or 256");
  if (spec.trials < 1) throw ConfigError("trials", "need at least one trial");
  if (spec.tx_per_matrix < 1)
    throw ConfigError("tx-per-matrix", "need at least one transmission per matrix");
  if (spec.workers < 0) throw ConfigError("workers", "worker count cannot be negative");
  std::sort(spec.t_range.begin(), spec.t_range.end());
  spec.t_range.erase(std::unique(spec.t_range.begin(), spec.t_range.end()),
                     spec.t_range.end());
  for (int t : spec.t_range)
    if (t < 1 || t > 16) throw ConfigError("t-range", "antenna counts must be in 1..16");
  std::sort(spec.snr_db.begin(), spec.snr_db.end());
  spec.snr_db.erase(std::unique(spec.snr_db.begin(), spec.snr_db.end()), spec.snr_db.end());
  for (double s : spec.snr_db)
    if (!std::isfinite(s)) throw ConfigError("snr", "SNR values must be finite");
  if (spec.kind == ExperimentKind::OracleCheck) {
    const double points = static_cast<double>(spec.qam);
    for (int t : spec.t_range)
      if (std::pow(points, t) > 1e7)
        throw ConfigError("t-range", "grid too large for the exhaustive oracle");
  }
}

RunReport run(const ExperimentSpec& input_spec) {
  ExperimentSpec spec = input_spec;
  finalize_spec(spec);

  const Constellation constellation =
      make_qam(static_cast<int>(std::lround(std::sqrt(static_cast<double>(spec.qam)))));

  std::vector<Method> methods;
  for (std::size_t oi = 0; oi < spec.orderings.size(); ++oi)
    for (Engine engine : spec.engines)
      methods.push_back(Method{spec.orderings[oi], engine, oi});

  const std::uint64_t audit_before = audit::violations();
  const bool queue_cdf = spec.kind == ExperimentKind::QueueCdf;
  const bool oracle = spec.kind == ExperimentKind::OracleCheck;
  const int decodes_per_trial = spec.tx_per_matrix;

  std::ostringstream csv;
  if (queue_cdf)
    csv << "t,snr_db,qam,method,queue_size,cdf\n";
  else
    csv << "t,snr_db,qam,method,pre_mults_divs,search_mults_divs,nodes,retries,"
           "queue_peak,oracle_match\n";

  std::size_t grid_index = 0;
  for (int t : spec.t_range) {
    for (double snr : spec.snr_db) {
      ChannelConfig cfg;
      cfg.t = t;
      cfg.r = t;
      cfg.snr_db = snr;
      cfg.constellation = constellation;
      const double sigma2 = noise_variance_for_snr(cfg);
      const double radius_sq = initial_radius_sq(sigma2, t);

      std::vector<std::vector<MethodTrial>> trials(
          spec.trials, std::vector<MethodTrial>(methods.size()));

      auto run_trial = [&](int k) {
        Rng rng(spec.seed, static_cast<std::uint64_t>(grid_index) * spec.trials +
                               static_cast<std::uint64_t>(k));
        const ComplexMatrix fading = sample_fading(t, t, rng);
        const ChannelInstance inst{fading, sigma2};

        std::vector<QrFactorization> facts(spec.orderings.size());
        std::vector<OpCounts> pre(spec.orderings.size());
        for (std::size_t oi = 0; oi < spec.orderings.size(); ++oi)
          facts[oi] = audited(spec.audit, [&] {
            return factorize(fading, spec.orderings[oi], pre[oi]);
          });
        for (std::size_t mi = 0; mi < methods.size(); ++mi)
          trials[k][mi].pre_md =
              static_cast<double>(pre[methods[mi].ordering_slot].mults_plus_divs());

        for (int tx = 0; tx < spec.tx_per_matrix; ++tx) {
          const ComplexVector a = random_symbols(constellation, t, rng);
          const ComplexVector x = transmit(inst, a, rng);

          double oracle_dist = 0.0;
          if (oracle) {
            const BruteForceResult bf = brute_force_ml(fading, x, constellation);
            oracle_dist = lattice_distance_sq(fading, x, bf.symbols);
          }

          for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const Method& method = methods[mi];
            MethodTrial& slot = trials[k][mi];
            OpCounts sc;
            SearchResult res;
            audited(spec.audit, [&] {
              const SearchProblem problem = build_problem(
                  facts[method.ordering_slot], x, radius_sq, constellation, sc);
              res = method.engine == Engine::DepthFirst ? depth_first_decode(problem)
                                                        : dijkstra_decode(problem);
              return 0;
            });
            sc = merge(sc, res.counts);
            slot.search_md += static_cast<double>(sc.mults_plus_divs());
            slot.nodes += static_cast<double>(sc.nodes_visited);
            slot.retries += static_cast<double>(res.radius_retries);
            slot.queue_peak += static_cast<double>(sc.queue_peak);
            if (queue_cdf) slot.queue_peaks.push_back(sc.queue_peak);
            if (oracle) {
              const ComplexVector decided =
                  apply_inverse_permutation(res.symbols, facts[method.ordering_slot].perm);
              if (lattice_distance_sq(fading, x, decided) != oracle_dist)
                ++slot.oracle_fails;
            }
          }
        }
      };

      const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
      const int workers =
          std::min(spec.trials, spec.workers > 0 ? spec.workers : static_cast<int>(hw));
      if (workers <= 1) {
        for (int k = 0; k < spec.trials; ++k) run_trial(k);
      } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
          pool.emplace_back([&] {
            try {
              for (int k = next.fetch_add(1); k < spec.trials; k = next.fetch_add(1))
                run_trial(k);
            } catch (...) {
              std::lock_guard<std::mutex> lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          });
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
      }

      // Merge in trial order so the report is worker-count independent.
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const std::string label = method_label(methods[mi].ordering, methods[mi].engine);
        if (queue_cdf) {
          std::vector<std::uint64_t> samples;
          for (int k = 0; k < spec.trials; ++k)
            samples.insert(samples.end(), trials[k][mi].queue_peaks.begin(),
                           trials[k][mi].queue_peaks.end());
          std::sort(samples.begin(), samples.end());
          const double total = static_cast<double>(samples.size());
          for (std::size_t i = 0; i < samples.size(); ++i) {
            if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
            csv << t << ',' << fmt_double(snr) << ',' << spec.qam << ',' << label << ','
                << samples[i] << ',' << fmt_double(static_cast<double>(i + 1) / total)
                << '\n';
          }
          continue;
        }

        double pre_sum = 0.0, search_sum = 0.0, nodes_sum = 0.0, retries_sum = 0.0,
               qpeak_sum = 0.0;
        long fails = 0;
        for (int k = 0; k < spec.trials; ++k) {
          const MethodTrial& slot = trials[k][mi];
          pre_sum += slot.pre_md;
          search_sum += slot.search_md;
          nodes_sum += slot.nodes;
          retries_sum += slot.retries;
          qpeak_sum += slot.queue_peak;
          fails += slot.oracle_fails;
        }
        const double decodes = static_cast<double>(spec.trials) * decodes_per_trial;
        csv << t << ',' << fmt_double(snr) << ',' << spec.qam << ',' << label << ','
            << fmt_double(pre_sum / spec.trials) << ',' << fmt_double(search_sum / decodes)
            << ',' << fmt_double(nodes_sum / decodes) << ','
            << fmt_double(retries_sum / decodes) << ',' << fmt_double(qpeak_sum / decodes)
            << ',';
        if (oracle)
          csv << fmt_double(1.0 - static_cast<double>(fails) / decodes);
        csv << '\n';
      }
      ++grid_index;
    }
  }

  RunReport report;
  report.csv = csv.str();
  report.audit_violations = audit::violations() - audit_before;
  if (!spec.out_path.empty()) {
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out) throw ConfigError("out", "cannot open output file " + spec.out_path);
    out << report.csv;
  }
  return report;
}

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, delim)) out.push_back(item);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

}  // namespace

std::string summarize(const std::string& report_csv, int tx_per_matrix) {
  if (tx_per_matrix < 1) throw ParseError("summarize: tx_per_matrix must be positive");
  std::istringstream in(report_csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("summarize: empty report");
  const std::string expected =
      "t,snr_db,qam,method,pre_mults_divs,search_mults_divs,nodes,retries,queue_peak,"
      "oracle_match";
  if (line != expected) throw ParseError("summarize: unexpected report header");

  struct Row {
    std::string method;
    double pre, search;
  };
  std::map<std::string, std::vector<Row>> groups;  // key: "t,snr,qam"
  std::vector<std::string> group_order;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() < 10) throw ParseError("summarize: malformed row: " + line);
    const std::string key = f[0] + "," + f[1] + "," + f[2];
    if (groups.find(key) == groups.end()) group_order.push_back(key);
    try {
      groups[key].push_back(Row{f[3], std::stod(f[4]), std::stod(f[5])});
    } catch (const std::exception&) {
      throw ParseError("summarize: bad numeric field in row: " + line);
    }
  }

  std::ostringstream out;
  out << "t,snr_db,qam,method,search_ratio,pre_ratio,total_ratio\n";
  for (const std::string& key : group_order) {
    const std::vector<Row>& rows = groups[key];
    const Row* base = nullptr;
    for (const Row& row : rows)
      if (row.method == "plain-dfs") base = &row;
    if (!base) throw ParseError("summarize: no plain-dfs baseline in group " + key);
    const double base_total = base->pre + tx_per_matrix * base->search;
    for (const Row& row : rows) {
      out << key << ',' << row.method << ',' << fmt_double(row.search / base->search)
          << ',' << fmt_double(row.pre / base->pre) << ','
          << fmt_double((row.pre + tx_per_matrix * row.search) / base_total) << '\n';
    }
  }
  return out.str();
}

ExperimentKind parse_kind(const std::string& token) {
  if (token == "search-complexity-vs-antennas")
    return ExperimentKind::SearchComplexityVsAntennas;
  if (token == "preprocess-complexity-vs-antennas")
    return ExperimentKind::PreprocessComplexityVsAntennas;
  if (token == "total-10tx") return ExperimentKind::Total10Tx;
  if (token == "complexity-vs-snr") return ExperimentKind::ComplexityVsSnr;
  if (token == "queue-cdf") return ExperimentKind::QueueCdf;
  if (token == "oracle-check") return ExperimentKind::OracleCheck;
  throw ConfigError("experiment", "unknown experiment kind: " + token);
}

Ordering parse_ordering(const std::string& token) {
  if (token == "plain") return Ordering::Plain;
  if (token == "norm") return Ordering::Norm;
  if (token == "norm-desc") return Ordering::NormDescending;
  if (token == "optimal") return Ordering::Optimal;
  if (token == "qrsort") return Ordering::QrSort;
  throw ConfigError("orderings", "unknown ordering: " + token);
}

Engine parse_engine(const std::string& token) {
  if (token == "dfs" || token == "depth-first") return Engine::DepthFirst;
  if (token == "dijkstra") return Engine::Dijkstra;
  throw ConfigError("engines", "unknown engine: " + token);
}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SearchComplexityVsAntennas:
      return "search-complexity-vs-antennas";
    case ExperimentKind::PreprocessComplexityVsAntennas:
      return "preprocess-complexity-vs-antennas";
    case ExperimentKind::Total10Tx:
      return "total-10tx";
    case ExperimentKind::ComplexityVsSnr:
      return "complexity-vs-snr";
    case ExperimentKind::QueueCdf:
      return "queue-cdf";
    case ExperimentKind::OracleCheck:
      return "oracle-check";
  }
  return "?";
}

const char* to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Plain:
      return "plain";
    case Ordering::Norm:
      return "norm";
    case Ordering::NormDescending:
      return "norm-desc";
    case Ordering::Optimal:
      return "optimal";
    case Ordering::QrSort:
      return "qrsort";
  }
  return "?";
}

const char* to_string(Engine engine) {
  return engine == Engine::DepthFirst ? "dfs" : "dijkstra";
}

std::string method_label(Ordering ordering, Engine engine) {
  return std::string(to_string(ordering)) + "-" + to_string(engine);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const std::size_t dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      for (const std::string& item : split(text, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    }
  } catch (const std::exception&) {
    throw ConfigError("t-range", "cannot parse integer list: " + text);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  try {
    for (const std::string& item : split(text, ','))
      if (!item.empty()) out.push_back(std::stod(item));
  } catch (const std::exception&) {
    throw ConfigError("snr", "cannot parse number list: " + text);
  }
  return out;
}

void apply_config_kv(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  if (key == "experiment") {
    spec.kind = parse_kind(value);
  } else if (key == "seed") {
    try {
      spec.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("seed", "cannot parse seed: " + value);
    }
  } else if (key == "out") {
    spec.out_path = value;
  } else if (key == "t-range") {
    const std::vector<int> vs = parse_int_list(value);
    spec.t_range.insert(spec.t_range.end(), vs.begin(), vs.end());
  } else if (key == "snr") {
    const std::vector<double> vs = parse_double_list(value);
    spec.snr_db.insert(spec.snr_db.end(), vs.begin(), vs.end());
  } else if (key == "qam") {
    try {
      spec.qam = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("qam", "cannot parse constellation size: " + value);
    }
  } else if (key == "trials") {
    try {
      spec.trials = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("trials", "cannot parse trial count: " + value);
    }
  } else if (key == "tx-per-matrix") {
    try {
      spec.tx_per_matrix = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("tx-per-matrix", "cannot parse transmission count: " + value);
    }
  } else if (key == "orderings") {
    for (const std::string& item : split(value, ','))
      if (!item.empty()) spec.orderings.push_back(parse_ordering(item));
  } else if (key == "engines") {
    for (const std::string& item : split(value, ','))
      if (!item.empty()) spec.engines.push_back(parse_engine(item));
  } else if (key == "workers") {
    try {
      spec.workers = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("workers", "cannot parse worker count: " + value);
    }
  } else if (key == "audit") {
    if (value == "true" || value == "1")
      spec.audit = true;
    else if (value == "false" || value == "0")
      spec.audit = false;
    else
      throw ConfigError("audit", "expected true/false: " + value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

void load_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    std::getline(ls, value);
    const std::size_t start = value.find_first_not_of(" \t");
    value = start == std::string::npos ? std::string() : value.substr(start);
    const std::size_t end = value.find_last_not_of(" \t\r");
    if (end != std::string::npos) value.erase(end + 1);
    if (value.empty()) throw ConfigError(key, "missing value in config file");
    apply_config_kv(spec, key, value);
  }
}

}  // namespace sphdec
