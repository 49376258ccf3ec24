#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsim/config.hpp"
#include "revsim/engine.hpp"
#include "revsim/metrics.hpp"
#include "revsim/sweep.hpp"
#include "revsim/workload.hpp"

namespace revsim {
namespace cli {

// Exit codes: 0 success, 1 config error, 2 runtime error, 3 validation findings.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitFindings = 3;

inline std::optional<Mode> parse_mode(const std::string& m) {
  if (m.empty()) return std::nullopt;
  if (m == "replay") return Mode::replay;
  if (m == "counterfactual") return Mode::counterfactual;
  throw ConfigError("unknown mode: " + m);
}

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : ""; }

// Parses, loads and runs a scenario given its JSON and base directory.
inline SimState execute(const json& config_json, const std::string& config_dir,
                        std::optional<std::uint64_t> seed_override, std::optional<Mode> mode_override) {
  std::vector<std::string> diags;
  ScenarioConfig cfg = parse_scenario(config_json, config_dir, diags);
  if (!diags.empty()) {
    std::string msg = "invalid scenario";
    for (const auto& d : diags) msg += "\n  " + d;
    throw ConfigError(msg);
  }
  if (seed_override) cfg.seed = *seed_override;
  if (mode_override) cfg.mode = *mode_override;
  SimState s = workload::load_scenario(cfg);
  run(s);
  return s;
}

inline void write_artifacts(const SimState& s, const metrics::RunSummary& summary,
                            const std::string& out_dir, bool write_events) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  if (write_events) write_ndjson(s.log, (fs::path(out_dir) / "events.ndjson").string(), s.log_names());
  {
    std::ofstream out(fs::path(out_dir) / "summary.json");
    out << metrics::to_json(summary).dump(2) << '\n';
  }
  fs::create_directories(fs::path(out_dir) / "series");
  for (const auto& q : s.cfg.queues) {
    auto series = metrics::queue_load_series(s.log, q.idx);
    metrics::write_series_csv(series,
                              (fs::path(out_dir) / "series" / ("load_" + q.id + ".csv")).string());
  }
}

struct RunOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string mode;  // empty: from config
  bool write_events = true;
  bool quiet = false;
};

inline int cmd_run(const RunOpts& opts) {
  try {
    json cfgj = read_json_file(opts.config_path);
    auto dir = std::filesystem::path(opts.config_path).parent_path().string();
    SimState s;
    try {
      s = execute(cfgj, dir, opts.seed, parse_mode(opts.mode));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      std::cerr << "runtime error: " << e.what() << '\n';
      return kExitRuntime;
    }
    auto summary = metrics::summarize(s);
    write_artifacts(s, summary, opts.out_dir, opts.write_events);
    if (!opts.quiet) {
      std::cout << "run complete: jobs_closed=" << summary.jobs_closed
                << " jobs_actioned=" << summary.jobs_actioned
                << " avg_tat_s=" << fmt_opt(summary.avg_tat_s)
                << " utilization=" << fmt_opt(summary.utilization)
                << " events=" << summary.events_processed << " wall_ms=" << summary.run_wall_us / 1000
                << " events_per_sec=" << fmt_double(summary.events_per_sec) << " out=" << opts.out_dir
                << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

struct SweepOpts {
  std::string config_path;
  std::string out_dir;
  std::string param;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  int jobs = 1;
  std::string mode;
  bool write_events = false;
  bool quiet = false;
};

inline const char* kSweepColumns =
    "param,value,seed,jobs_total,jobs_closed,jobs_actioned,jobs_dropped,jobs_auto,"
    "avg_tat_s,tat_p90_s,sla_violation_rate,escalated_avg_tat_s,utilization,total_rv,"
    "coverage,topic1_coverage,topic2_coverage,topic3_coverage,misspecification_rate,peak_load_max";

inline std::string sweep_row(const std::string& param, double value, std::uint64_t seed,
                             const metrics::RunSummary& r) {
  std::int64_t peak_max = 0;
  for (const auto& q : r.per_queue) peak_max = std::max(peak_max, q.peak_load);
  std::string row = param;
  row += ',' + fmt_double(value);
  row += ',' + std::to_string(seed);
  row += ',' + std::to_string(r.jobs_total);
  row += ',' + std::to_string(r.jobs_closed);
  row += ',' + std::to_string(r.jobs_actioned);
  row += ',' + std::to_string(r.jobs_dropped);
  row += ',' + std::to_string(r.jobs_auto);
  row += ',' + fmt_opt(r.avg_tat_s);
  row += ',' + fmt_opt(r.tat_p90_s);
  row += ',' + fmt_opt(r.sla_violation_rate);
  row += ',' + fmt_opt(r.escalated_avg_tat_s);
  row += ',' + fmt_opt(r.utilization);
  row += ',' + fmt_double(r.total_rv);
  row += ',' + fmt_opt(r.coverage);
  row += ',' + fmt_opt(r.topic_coverage[0]);
  row += ',' + fmt_opt(r.topic_coverage[1]);
  row += ',' + fmt_opt(r.topic_coverage[2]);
  row += ',' + fmt_opt(r.misspecification_rate);
  row += ',' + std::to_string(peak_max);
  return row;
}

// One run per (value, seed), each isolated. A failed point aborts the sweep
// after all workers finish, leaving a partial-results manifest.
inline int cmd_sweep(const SweepOpts& opts) {
  try {
    json base = read_json_file(opts.config_path);
    auto dir = std::filesystem::path(opts.config_path).parent_path().string();
    if (!sweep::resolve_path(base, opts.param))
      throw ConfigError("sweep parameter path not resolvable: " + opts.param);
    auto points = sweep::make_points(opts.values, opts.seeds);
    auto mode_override = parse_mode(opts.mode);

    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    std::vector<std::string> rows(points.size());
    std::vector<std::string> errors(points.size());

    sweep::for_each_point(points.size(), opts.jobs, [&](std::size_t i) {
      const auto& p = points[i];
      try {
        json cfgj = base;
        sweep::patch(cfgj, opts.param, p.value);
        SimState s = execute(cfgj, dir, p.seed, mode_override);
        auto summary = metrics::summarize(s);
        std::string point_dir = (fs::path(opts.out_dir) /
                                 ("point_" + std::to_string(i) + "_v" + fmt_double(p.value) + "_s" +
                                  std::to_string(p.seed)))
                                    .string();
        write_artifacts(s, summary, point_dir, opts.write_events);
        rows[i] = sweep_row(opts.param, p.value, p.seed, summary);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });

    bool failed = false;
    for (const auto& e : errors)
      if (!e.empty()) failed = true;

    if (failed) {
      nlohmann::ordered_json manifest;
      manifest["param"] = opts.param;
      manifest["completed"] = json::array();
      manifest["failed"] = json::array();
      for (std::size_t i = 0; i < points.size(); ++i) {
        nlohmann::ordered_json pj{{"value", points[i].value}, {"seed", points[i].seed}};
        if (errors[i].empty()) {
          manifest["completed"].push_back(pj);
        } else {
          pj["error"] = errors[i];
          manifest["failed"].push_back(pj);
        }
      }
      std::ofstream out(fs::path(opts.out_dir) / "sweep_manifest.json");
      out << manifest.dump(2) << '\n';
      std::cerr << "sweep aborted: " << manifest["failed"].size()
                << " point(s) failed; partial results in " << opts.out_dir << '\n';
      return kExitRuntime;
    }

    std::ofstream out(fs::path(opts.out_dir) / "sweep.csv");
    out << kSweepColumns << '\n';
    for (const auto& row : rows) out << row << '\n';
    if (!opts.quiet)
      std::cout << "sweep complete: " << points.size() << " points -> " << opts.out_dir << "/sweep.csv\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// Two scenarios are comparable only when they run the exact same job stream.
inline std::uint64_t workload_fingerprint(const json& cfgj, const std::string& dir) {
  std::uint64_t h = 0xC0FFEE5EEDull;
  bool stochastic_jobs = false;
  if (cfgj.contains("traces") && cfgj["traces"].contains("jobs")) {
    std::filesystem::path p(cfgj["traces"]["jobs"].get<std::string>());
    if (!p.is_absolute()) p = std::filesystem::path(dir) / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open jobs trace: " + p.string());
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    h ^= fnv1a64(contents);
  }
  if (cfgj.contains("synthetic")) {
    h ^= fnv1a64(cfgj["synthetic"].dump());
    stochastic_jobs = true;
  }
  double df = cfgj.value("demand_factor", 1.0);
  if (df != 1.0) stochastic_jobs = true;
  h ^= fnv1a64(fmt_double(df));
  if (stochastic_jobs) h ^= splitmix64(cfgj.value("seed", 1ull));
  return h;
}

struct CompareOpts {
  std::string config_a;
  std::string config_b;
  std::string out_dir;
  bool quiet = false;
};

inline int cmd_compare(const CompareOpts& opts) {
  try {
    json ja = read_json_file(opts.config_a);
    json jb = read_json_file(opts.config_b);
    auto dir_a = std::filesystem::path(opts.config_a).parent_path().string();
    auto dir_b = std::filesystem::path(opts.config_b).parent_path().string();
    if (workload_fingerprint(ja, dir_a) != workload_fingerprint(jb, dir_b))
      throw ConfigError(
          "scenarios do not share the same job trace (trace contents, synthetic spec, demand factor "
          "and seed must match); comparison would not be apples-to-apples");

    SimState sa, sb;
    try {
      sa = execute(ja, dir_a, std::nullopt, std::nullopt);
      sb = execute(jb, dir_b, std::nullopt, std::nullopt);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      std::cerr << "runtime error: " << e.what() << '\n';
      return kExitRuntime;
    }
    auto ra = metrics::summarize(sa);
    auto rb = metrics::summarize(sb);

    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);

    nlohmann::ordered_json report;
    report["a"] = metrics::to_json(ra);
    report["b"] = metrics::to_json(rb);
    auto delta_opt = [](const std::optional<double>& a, const std::optional<double>& b) -> json {
      if (a && b) return *b - *a;
      return nullptr;
    };
    report["delta"] = {{"avg_tat_s", delta_opt(ra.avg_tat_s, rb.avg_tat_s)},
                       {"utilization", delta_opt(ra.utilization, rb.utilization)},
                       {"sla_violation_rate", delta_opt(ra.sla_violation_rate, rb.sla_violation_rate)},
                       {"total_rv", rb.total_rv - ra.total_rv},
                       {"jobs_closed", rb.jobs_closed - ra.jobs_closed}};
    {
      std::ofstream out(fs::path(opts.out_dir) / "compare.json");
      out << report.dump(2) << '\n';
    }
    {
      std::ofstream out(fs::path(opts.out_dir) / "compare.csv");
      out << "queue,peak_load_a,peak_load_b,delta_peak,avg_tat_a_s,avg_tat_b_s,delta_avg_tat_s\n";
      for (std::size_t i = 0; i < ra.per_queue.size(); ++i) {
        const auto& qa = ra.per_queue[i];
        const auto& qb = rb.per_queue[i];
        out << qa.id << ',' << qa.peak_load << ',' << qb.peak_load << ','
            << (qb.peak_load - qa.peak_load) << ',' << fmt_opt(qa.avg_tat_s) << ','
            << fmt_opt(qb.avg_tat_s) << ',';
        if (qa.avg_tat_s && qb.avg_tat_s) out << fmt_double(*qb.avg_tat_s - *qa.avg_tat_s);
        out << '\n';
      }
    }
    if (!opts.quiet) {
      std::cout << "compare: avg_tat_s " << fmt_opt(ra.avg_tat_s) << " -> " << fmt_opt(rb.avg_tat_s)
                << ", utilization " << fmt_opt(ra.utilization) << " -> " << fmt_opt(rb.utilization)
                << ", total_rv " << fmt_double(ra.total_rv) << " -> " << fmt_double(rb.total_rv)
                << ", out=" << opts.out_dir << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// Schema and referential checks without running; every finding is printed.
inline int cmd_validate(const std::string& config_path, std::ostream& out = std::cout) {
  std::vector<std::string> diags;
  json cfgj;
  try {
    cfgj = read_json_file(config_path);
  } catch (const ConfigError& e) {
    out << "FINDING: " << e.what() << '\n';
    out << "1 finding(s)\n";
    return kExitFindings;
  }
  auto dir = std::filesystem::path(config_path).parent_path().string();
  ScenarioConfig cfg = parse_scenario(cfgj, dir, diags);
  if (diags.empty()) {
    auto more = workload::collect_diagnostics(cfg);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (diags.empty()) {
    out << "OK\n";
    return kExitOk;
  }
  for (const auto& d : diags) out << "FINDING: " << d << '\n';
  out << diags.size() << " finding(s)\n";
  return kExitFindings;
}

}  // namespace cli
}  // namespace revsim
