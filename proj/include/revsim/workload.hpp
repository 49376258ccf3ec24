#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsim/config.hpp"
#include "revsim/engine.hpp"
#include "revsim/rng.hpp"
#include "revsim/util.hpp"

namespace revsim {
namespace workload {

// --- trace parsing -----------------------------------------------------------

inline ContentViewTrajectory parse_views(const json& arr, const std::string& where,
                                         std::vector<std::string>& diags) {
  ContentViewTrajectory t;
  if (!arr.is_array()) {
    diags.push_back(where + ": views must be an array of [time_ms, cumulative] pairs");
    return t;
  }
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) {
      diags.push_back(where + ": malformed view sample");
      return t;
    }
    t.samples.emplace_back(p[0].get<SimTime>(), p[1].get<std::int64_t>());
  }
  return t;
}

// One job per line. Unknown references and malformed fields become
// diagnostics naming the record.
inline std::vector<Job> parse_jobs(const std::string& path, const Interner& queue_names,
                                   const Interner& reviewer_names, Mode mode,
                                   std::vector<std::string>& diags) {
  std::vector<Job> jobs;
  std::ifstream in(path);
  if (!in) {
    diags.push_back("jobs trace: cannot open " + path);
    return jobs;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      diags.push_back("jobs trace line " + std::to_string(lineno) + ": invalid JSON");
      continue;
    }
    Job job;
    job.id = j.value("id", "");
    std::string where = "job '" + (job.id.empty() ? "line " + std::to_string(lineno) : job.id) + "'";
    if (job.id.empty()) {
      diags.push_back(where + ": missing id");
      continue;
    }
    if (!j.contains("enqueue_ms")) {
      diags.push_back(where + ": missing enqueue_ms");
      continue;
    }
    job.enqueue_ms = j["enqueue_ms"].get<SimTime>();
    job.handle_ms = j.value("handle_ms", static_cast<Duration>(0));

    auto parse_tok = [&](const char* key, auto setter, auto fallback) {
      using Enum = decltype(fallback);
      std::string v = j.value(key, std::string(to_string(fallback)));
      auto parsed = parse_enum<Enum>(v);
      if (!parsed) {
        diags.push_back(where + ": unknown " + key + " '" + v + "'");
        return;
      }
      setter(*parsed);
    };
    parse_tok("source", [&](JobSource v) { job.source = v; }, JobSource::user_report);
    parse_tok("content_type", [&](ContentType v) { job.content_type = v; }, ContentType::text);
    parse_tok("severity", [&](Severity v) { job.severity = v; }, Severity::low);
    parse_tok("true_label", [&](TrueLabel v) { job.true_label = v; }, TrueLabel::benign);

    job.market = j.value("market", "default");
    job.language = j.value("language", "default");
    job.violation_type = j.value("violation_type", "default");
    job.classifier_score = j.value("classifier_score", 0.0);
    job.p_escalate = j.value("p_escalate", 0.0);
    if (j.contains("topic_scores")) {
      const auto& ts = j["topic_scores"];
      if (ts.is_array() && ts.size() == 3)
        for (std::size_t i = 0; i < 3; ++i) job.topic_scores[i] = ts[i].get<double>();
      else
        diags.push_back(where + ": topic_scores must have 3 entries");
    }
    if (j.contains("views")) job.views = parse_views(j["views"], where, diags);
    if (j.contains("predicted_views")) job.predicted_views = parse_views(j["predicted_views"], where, diags);
    job.monitor_cycles = j.value("monitor_cycles", 0);
    job.monitor_left = job.monitor_cycles;
    if (j.contains("auto_decision_ms")) job.auto_decision_ms = j["auto_decision_ms"].get<SimTime>();
    if (j.contains("weight")) job.weight = j["weight"].get<double>();

    std::string qid = j.value("queue", "");
    if (!qid.empty()) {
      job.queue0 = queue_names.find(qid);
      if (job.queue0 < 0) diags.push_back(where + ": unknown queue '" + qid + "'");
    }

    if (j.contains("trajectory")) {
      for (const auto& tj : j["trajectory"]) {
        TrajectoryEvent ev;
        ev.t = tj.value("t", static_cast<SimTime>(0));
        std::string kind = tj.value("kind", "");
        auto parsed = parse_enum<TrajKind>(kind);
        if (!parsed) {
          diags.push_back(where + ": unknown trajectory kind '" + kind + "'");
          continue;
        }
        ev.kind = *parsed;
        std::string tq = tj.value("queue", "");
        if (!tq.empty()) {
          ev.queue = queue_names.find(tq);
          if (ev.queue < 0) diags.push_back(where + ": trajectory references unknown queue '" + tq + "'");
        }
        std::string tr = tj.value("reviewer", "");
        if (!tr.empty()) {
          ev.reviewer = reviewer_names.find(tr);
          if (ev.reviewer < 0 && mode == Mode::replay)
            diags.push_back(where + ": trajectory references unknown reviewer '" + tr + "'");
        }
        job.recorded.push_back(ev);
      }
      if (job.queue0 < 0 && !job.recorded.empty() && job.recorded.front().kind == TrajKind::enqueued)
        job.queue0 = job.recorded.front().queue;
    }
    if (job.queue0 < 0 && !job.auto_decision_ms)
      diags.push_back(where + ": no queue and no trajectory to infer one");
    jobs.push_back(std::move(job));
  }
  return jobs;
}

inline std::vector<Reviewer> parse_reviewers(const std::string& shifts_path, const std::string& skills_path,
                                             const std::map<std::string, std::string>& locations,
                                             std::vector<std::string>& diags) {
  std::map<std::string, Reviewer> by_id;

  if (!shifts_path.empty()) {
    std::ifstream in(shifts_path);
    if (!in) {
      diags.push_back("shifts table: cannot open " + shifts_path);
    } else {
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto text = trim(line);
        if (text.empty() || lineno == 1) continue;  // header
        auto cols = split(text, ',');
        if (cols.size() != 3) {
          diags.push_back("shifts table line " + std::to_string(lineno) + ": expected 3 columns");
          continue;
        }
        std::string rid(trim(cols[0]));
        Shift sh;
        try {
          sh.start = std::stoll(std::string(trim(cols[1])));
          sh.end = std::stoll(std::string(trim(cols[2])));
        } catch (...) {
          diags.push_back("shifts table line " + std::to_string(lineno) + ": bad timestamp");
          continue;
        }
        auto& r = by_id[rid];
        r.id = rid;
        r.shifts.push_back(sh);
      }
    }
  }
  if (!skills_path.empty()) {
    std::ifstream in(skills_path);
    if (!in) {
      diags.push_back("skills table: cannot open " + skills_path);
    } else {
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto text = trim(line);
        if (text.empty() || lineno == 1) continue;  // header
        auto cols = split(text, ',');
        if (cols.size() != 2) {
          diags.push_back("skills table line " + std::to_string(lineno) + ": expected 2 columns");
          continue;
        }
        std::string rid(trim(cols[0]));
        auto& r = by_id[rid];
        r.id = rid;
        r.skills.emplace_back(trim(cols[1]));
      }
    }
  }

  std::vector<Reviewer> out;
  out.reserve(by_id.size());
  for (auto& [rid, r] : by_id) {
    std::sort(r.skills.begin(), r.skills.end());
    r.skills.erase(std::unique(r.skills.begin(), r.skills.end()), r.skills.end());
    std::sort(r.shifts.begin(), r.shifts.end(), [](const Shift& a, const Shift& b) { return a.start < b.start; });
    auto it = locations.find(rid);
    r.location = it == locations.end() ? "default" : it->second;
    out.push_back(std::move(r));
  }
  return out;
}

// --- validation --------------------------------------------------------------

inline void validate_jobs(const std::vector<Job>& jobs, Mode mode, std::vector<std::string>& diags) {
  std::set<std::string> seen;
  for (const auto& job : jobs) {
    std::string where = "job '" + job.id + "'";
    if (!seen.insert(job.id).second) diags.push_back(where + ": duplicate id");
    if (job.handle_ms <= 0) diags.push_back(where + ": handle_ms must be positive");
    if (job.enqueue_ms < 0) diags.push_back(where + ": enqueue_ms must be non-negative");
    auto prob = [&](double v, const char* field) {
      if (v < 0.0 || v > 1.0) diags.push_back(where + ": " + field + " must be in [0,1]");
    };
    prob(job.classifier_score, "classifier_score");
    prob(job.p_escalate, "p_escalate");
    for (double p : job.topic_scores) prob(p, "topic_scores");
    if (!job.views.valid()) diags.push_back(where + ": views must be strictly increasing in time and non-decreasing in count");
    if (!job.predicted_views.valid())
      diags.push_back(where + ": predicted_views must be strictly increasing in time and non-decreasing in count");
    if (job.monitor_cycles < 0) diags.push_back(where + ": monitor_cycles must be non-negative");
    if (job.weight && *job.weight <= 0) diags.push_back(where + ": weight must be positive");

    if (!job.recorded.empty()) {
      JobState st = JobState::created;
      SimTime last = -1;
      bool ok = true;
      for (const auto& ev : job.recorded) {
        if (ev.t < last) {
          diags.push_back(where + ": trajectory times decrease");
          ok = false;
          break;
        }
        last = ev.t;
        if (!transition_allowed(st, ev.kind)) {
          diags.push_back(where + ": trajectory has illegal step " + to_string(st) + " -> " +
                          to_string(ev.kind));
          ok = false;
          break;
        }
        st = state_after(ev.kind);
      }
      if (ok && job.recorded.front().kind == TrajKind::enqueued &&
          job.recorded.front().t != job.enqueue_ms)
        diags.push_back(where + ": enqueue_ms disagrees with first trajectory step");
    } else if (mode == Mode::replay && !job.auto_decision_ms) {
      diags.push_back(where + ": replay mode requires a recorded trajectory");
    }
  }
}

inline void validate_reviewers(const std::vector<Reviewer>& reviewers, std::vector<std::string>& diags) {
  for (const auto& r : reviewers) {
    std::string where = "reviewer '" + r.id + "'";
    SimTime prev_end = -1;
    for (const auto& sh : r.shifts) {
      if (sh.start >= sh.end) diags.push_back(where + ": shift start must precede end");
      if (sh.start < prev_end) diags.push_back(where + ": shifts overlap");
      prev_end = std::max(prev_end, sh.end);
    }
  }
}

// --- resampling --------------------------------------------------------------

namespace detail {

inline void shift_times(Job& job, Duration delta) {
  job.enqueue_ms += delta;
  if (job.auto_decision_ms) *job.auto_decision_ms += delta;
  for (auto& s : job.views.samples) s.first += delta;
  for (auto& s : job.predicted_views.samples) s.first += delta;
  for (auto& ev : job.recorded) ev.t += delta;
}

inline void canonical_sort(std::vector<Job>& jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.enqueue_ms != b.enqueue_ms) return a.enqueue_ms < b.enqueue_ms;
    return a.id < b.id;
  });
}

}  // namespace detail

// Thins (factor < 1) or replicates (factor > 1) the trace. Replicas keep
// handle times and metadata exactly; arrivals are re-jittered inside the
// source job's original hour so the diurnal shape survives.
inline std::vector<Job> resample_demand(std::vector<Job> jobs, double factor, std::uint64_t seed) {
  if (factor <= 0) throw ConfigError("demand factor must be positive");
  if (factor == 1.0) return jobs;
  RunRng rng(splitmix64(seed ^ 0xDE11A9D5ull));
  std::vector<Job> out;
  if (factor < 1.0) {
    for (auto& job : jobs)
      if (rng.uniform() < factor) out.push_back(std::move(job));
  } else {
    double extra = factor - 1.0;
    auto whole = static_cast<int>(extra);
    double frac = extra - whole;
    out.reserve(jobs.size() * static_cast<std::size_t>(factor + 1));
    for (auto& job : jobs) {
      int copies = whole + (frac > 0.0 && rng.uniform() < frac ? 1 : 0);
      SimTime bucket = (job.enqueue_ms / kHour) * kHour;
      for (int k = 1; k <= copies; ++k) {
        Job copy = job;
        copy.id = job.id + "~r" + std::to_string(k);
        SimTime arrival = bucket + static_cast<SimTime>(rng.uniform() * static_cast<double>(kHour));
        detail::shift_times(copy, arrival - job.enqueue_ms);
        out.push_back(std::move(copy));
      }
      out.push_back(std::move(job));
    }
  }
  detail::canonical_sort(out);
  return out;
}

inline std::vector<Reviewer> resample_supply(std::vector<Reviewer> reviewers, double factor,
                                             std::uint64_t seed) {
  if (factor <= 0) throw ConfigError("supply factor must be positive");
  if (factor == 1.0) return reviewers;
  RunRng rng(splitmix64(seed ^ 0x50BB17E5ull));
  std::vector<Reviewer> out;
  if (factor < 1.0) {
    for (auto& r : reviewers)
      if (rng.uniform() < factor) out.push_back(std::move(r));
  } else {
    double extra = factor - 1.0;
    auto whole = static_cast<int>(extra);
    double frac = extra - whole;
    for (auto& r : reviewers) {
      for (int k = 1; k <= whole + (frac > 0.0 && rng.uniform() < frac ? 1 : 0); ++k) {
        Reviewer copy = r;
        copy.id = r.id + "~r" + std::to_string(k);
        out.push_back(std::move(copy));
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

// --- synthetic generation ----------------------------------------------------

namespace detail {

inline double sample_num(const Dist& d, RunRng& rng) {
  switch (d.kind) {
    case Dist::Kind::fixed: return d.a;
    case Dist::Kind::uniform: return rng.uniform(d.a, d.b);
    case Dist::Kind::exponential: return rng.exponential(d.a);
    case Dist::Kind::lognormal: return rng.lognormal(d.a, d.b);
    case Dist::Kind::empirical: {
      if (d.empirical.empty()) return 0.0;
      auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(d.empirical.size()));
      return d.empirical[std::min(i, d.empirical.size() - 1)];
    }
    case Dist::Kind::choice: {
      double total = 0.0;
      for (const auto& [_, w] : d.choices) total += w;
      std::vector<double> ws;
      for (const auto& [_, w] : d.choices) ws.push_back(w);
      auto i = rng.pick_weighted(ws, total);
      return std::stod(d.choices[i].first);
    }
    case Dist::Kind::mixture: {
      double total = 0.0;
      std::vector<double> ws;
      for (const auto& [w, _] : d.parts) {
        ws.push_back(w);
        total += w;
      }
      auto i = rng.pick_weighted(ws, total);
      return sample_num(d.parts[i].second, rng);
    }
  }
  return 0.0;
}

inline std::string sample_str(const Dist& d, RunRng& rng) {
  if (d.kind == Dist::Kind::choice) {
    double total = 0.0;
    std::vector<double> ws;
    for (const auto& [_, w] : d.choices) {
      ws.push_back(w);
      total += w;
    }
    auto i = rng.pick_weighted(ws, total);
    return d.choices[i].first;
  }
  return std::to_string(sample_num(const_cast<Dist&>(d), rng));
}

inline void load_empirical(Dist& d, const std::string& config_dir, std::vector<std::string>& diags) {
  if (d.kind == Dist::Kind::empirical && d.empirical.empty()) {
    std::filesystem::path p(d.file);
    if (!p.is_absolute()) p = std::filesystem::path(config_dir) / p;
    std::ifstream in(p);
    if (!in) {
      diags.push_back("empirical distribution: cannot open " + p.string());
      return;
    }
    double v;
    while (in >> v) d.empirical.push_back(v);
    if (d.empirical.empty()) diags.push_back("empirical distribution: no samples in " + p.string());
  }
  for (auto& [_, part] : d.parts) load_empirical(part, config_dir, diags);
}

}  // namespace detail

inline void materialize_dists(SynthSpec& s, const std::string& config_dir, std::vector<std::string>& diags) {
  detail::load_empirical(s.handle_ms, config_dir, diags);
  detail::load_empirical(s.views.rate_per_hour, config_dir, diags);
  detail::load_empirical(s.classifier_score, config_dir, diags);
  detail::load_empirical(s.p_escalate, config_dir, diags);
}

// Deterministic in (spec, seed). Jobs come out in canonical (arrival, id) order.
inline std::vector<Job> generate_synthetic(const SynthSpec& spec, const Interner& queue_names,
                                           std::uint64_t seed, std::vector<std::string>& diags) {
  RunRng rng(splitmix64(seed ^ 0x5E17A11Dull));
  std::vector<Job> out;

  std::vector<SimTime> arrivals;
  if (spec.arrival.kind == ArrivalSpec::Kind::poisson) {
    double mean_gap_ms = 3600000.0 / spec.arrival.rate_per_hour;
    SimTime t = spec.start_ms;
    SimTime cutoff = spec.arrival.duration_ms > 0 ? spec.start_ms + spec.arrival.duration_ms
                                                  : std::numeric_limits<SimTime>::max();
    while (true) {
      double gap = rng.exponential(mean_gap_ms);
      t += std::max<SimTime>(1, std::llround(gap));
      if (spec.count > 0 && static_cast<std::int64_t>(arrivals.size()) >= spec.count) break;
      if (t > cutoff) break;
      arrivals.push_back(t);
      if (spec.count > 0 && static_cast<std::int64_t>(arrivals.size()) >= spec.count) break;
    }
  } else {
    for (std::int64_t i = 0; i < spec.count; ++i)
      arrivals.push_back(spec.start_ms +
                         static_cast<SimTime>(rng.uniform() * static_cast<double>(spec.arrival.duration_ms)));
    std::sort(arrivals.begin(), arrivals.end());
  }

  int pad = 1;
  for (std::size_t n = arrivals.size(); n >= 10; n /= 10) ++pad;
  out.reserve(arrivals.size());
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    Job job;
    std::string num = std::to_string(i);
    job.id = spec.id_prefix + std::string(static_cast<std::size_t>(pad) > num.size() ? pad - num.size() : 0, '0') + num;
    job.enqueue_ms = arrivals[i];
    job.injected = true;
    job.handle_ms = std::max<Duration>(1, std::llround(detail::sample_num(spec.handle_ms, rng)));
    std::string qid = detail::sample_str(spec.queue, rng);
    job.queue0 = queue_names.find(qid);
    if (job.queue0 < 0) diags.push_back("synthetic job " + job.id + ": unknown queue '" + qid + "'");

    auto tok = [&](const Dist& d) { return detail::sample_str(d, rng); };
    if (auto v = parse_enum<ContentType>(tok(spec.content_type))) job.content_type = *v;
    job.market = tok(spec.market);
    job.language = tok(spec.language);
    job.violation_type = tok(spec.violation_type);
    if (auto v = parse_enum<Severity>(tok(spec.severity))) job.severity = *v;
    if (auto v = parse_enum<TrueLabel>(tok(spec.true_label))) job.true_label = *v;
    if (auto v = parse_enum<JobSource>(tok(spec.source))) job.source = *v;
    job.classifier_score = std::clamp(detail::sample_num(spec.classifier_score, rng), 0.0, 1.0);
    job.p_escalate = std::clamp(detail::sample_num(spec.p_escalate, rng), 0.0, 1.0);
    for (std::size_t k = 0; k < 3; ++k)
      job.topic_scores[k] = std::clamp(detail::sample_num(spec.topic[k], rng), 0.0, 1.0);

    if (!spec.views.rate_per_hour.is_zero()) {
      double rate = std::max(0.0, detail::sample_num(spec.views.rate_per_hour, rng));
      double factor = std::max(0.0, detail::sample_num(spec.views.pred_factor, rng));
      int n = spec.views.samples;
      Duration step = std::max<Duration>(1, spec.views.duration_ms / n);
      for (int k = 1; k <= n; ++k) {
        SimTime ts = job.enqueue_ms + static_cast<Duration>(k) * step;
        auto v = static_cast<std::int64_t>(std::llround(rate * to_hours(static_cast<Duration>(k) * step)));
        job.views.samples.emplace_back(ts, v);
        job.predicted_views.samples.emplace_back(
            ts, static_cast<std::int64_t>(std::llround(factor * static_cast<double>(v))));
      }
    }
    if (spec.auto_decision_delay_ms) {
      auto delay = std::max<Duration>(0, std::llround(detail::sample_num(*spec.auto_decision_delay_ms, rng)));
      job.auto_decision_ms = job.enqueue_ms + delay;
    }
    out.push_back(std::move(job));
  }
  detail::canonical_sort(out);
  return out;
}

// --- trace emission (round trips, fixture tooling) ----------------------------

inline void emit_jobs(const std::vector<Job>& jobs, const std::string& path, const Interner& queue_names,
                      const Interner& reviewer_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open " + path);
  for (const auto& job : jobs) {
    nlohmann::ordered_json j;
    j["id"] = job.id;
    j["enqueue_ms"] = job.enqueue_ms;
    j["source"] = to_string(job.source);
    j["content_type"] = to_string(job.content_type);
    j["market"] = job.market;
    j["language"] = job.language;
    j["violation_type"] = job.violation_type;
    j["classifier_score"] = job.classifier_score;
    j["p_escalate"] = job.p_escalate;
    j["topic_scores"] = job.topic_scores;
    j["severity"] = to_string(job.severity);
    j["handle_ms"] = job.handle_ms;
    j["true_label"] = to_string(job.true_label);
    if (job.queue0 >= 0) j["queue"] = queue_names.name(job.queue0);
    auto views_json = [](const ContentViewTrajectory& t) {
      json arr = json::array();
      for (const auto& [ts, v] : t.samples) arr.push_back(json::array({ts, v}));
      return arr;
    };
    if (!job.views.samples.empty()) j["views"] = views_json(job.views);
    if (!job.predicted_views.samples.empty()) j["predicted_views"] = views_json(job.predicted_views);
    if (job.monitor_cycles > 0) j["monitor_cycles"] = job.monitor_cycles;
    if (job.auto_decision_ms) j["auto_decision_ms"] = *job.auto_decision_ms;
    if (job.weight) j["weight"] = *job.weight;
    if (!job.recorded.empty()) {
      json arr = json::array();
      for (const auto& ev : job.recorded) {
        nlohmann::ordered_json e;
        e["t"] = ev.t;
        e["kind"] = to_string(ev.kind);
        if (ev.queue >= 0) e["queue"] = queue_names.name(ev.queue);
        if (ev.reviewer >= 0) e["reviewer"] = reviewer_names.name(ev.reviewer);
        arr.push_back(e);
      }
      j["trajectory"] = arr;
    }
    out << j.dump() << '\n';
  }
}

inline void emit_shifts(const std::vector<Reviewer>& reviewers, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open " + path);
  out << "reviewer_id,start_ms,end_ms\n";
  for (const auto& r : reviewers)
    for (const auto& sh : r.shifts) out << r.id << ',' << sh.start << ',' << sh.end << '\n';
}

inline void emit_skills(const std::vector<Reviewer>& reviewers, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open " + path);
  out << "reviewer_id,skill\n";
  for (const auto& r : reviewers)
    for (const auto& sk : r.skills) out << r.id << ',' << sk << '\n';
}

// --- scenario assembly ---------------------------------------------------------

// Collects every diagnostic a scenario would raise, without building a run.
inline std::vector<std::string> collect_diagnostics(const ScenarioConfig& cfg) {
  std::vector<std::string> diags;
  Interner reviewer_names;
  std::vector<Reviewer> reviewers =
      parse_reviewers(resolve_path(cfg, cfg.shifts_path), resolve_path(cfg, cfg.skills_path),
                      cfg.reviewer_locations, diags);
  for (const auto& r : reviewers) reviewer_names.intern(r.id);
  validate_reviewers(reviewers, diags);
  if (!cfg.jobs_path.empty()) {
    auto jobs = parse_jobs(resolve_path(cfg, cfg.jobs_path), cfg.queue_names, reviewer_names, cfg.mode, diags);
    validate_jobs(jobs, cfg.mode, diags);
  }
  SynthSpec synth = cfg.synthetic;
  if (synth.enabled) materialize_dists(synth, cfg.config_dir, diags);
  return diags;
}

// Builds a runnable state: entity tables, indices, eligibility, and the
// pre-scheduled calendar (arrivals, shifts, resorts, reaper scans).
inline SimState load_scenario(const ScenarioConfig& cfg) {
  SimState s;
  s.cfg = cfg;
  s.mode = cfg.mode;
  s.horizon = cfg.horizon_ms;
  s.rng = RunRng(cfg.seed);
  std::vector<std::string> diags;

  // Reviewers first; job trajectories may reference them.
  std::vector<Reviewer> reviewers =
      parse_reviewers(resolve_path(cfg, cfg.shifts_path), resolve_path(cfg, cfg.skills_path),
                      cfg.reviewer_locations, diags);
  if (cfg.supply_factor != 1.0) reviewers = resample_supply(std::move(reviewers), cfg.supply_factor, cfg.seed);
  std::sort(reviewers.begin(), reviewers.end(), [](const Reviewer& a, const Reviewer& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < reviewers.size(); ++i) {
    reviewers[i].idx = static_cast<std::int32_t>(i);
    s.reviewer_names.intern(reviewers[i].id);
  }
  validate_reviewers(reviewers, diags);

  std::vector<Job> jobs;
  if (!cfg.jobs_path.empty()) {
    jobs = parse_jobs(resolve_path(cfg, cfg.jobs_path), cfg.queue_names, s.reviewer_names, cfg.mode, diags);
    if (cfg.demand_factor != 1.0) jobs = resample_demand(std::move(jobs), cfg.demand_factor, cfg.seed);
  }
  if (cfg.synthetic.enabled) {
    SynthSpec synth = cfg.synthetic;
    materialize_dists(synth, cfg.config_dir, diags);
    auto extra = generate_synthetic(synth, cfg.queue_names, cfg.seed, diags);
    jobs.insert(jobs.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  }

  // Epoch: the earliest input timestamp becomes t = 0.
  SimTime epoch = std::numeric_limits<SimTime>::max();
  bool any = false;
  for (const auto& job : jobs) {
    if (job.injected) continue;  // synthetic times are epoch-relative already
    any = true;
    epoch = std::min(epoch, job.enqueue_ms);
    for (const auto& ev : job.recorded) epoch = std::min(epoch, ev.t);
  }
  for (const auto& r : reviewers)
    for (const auto& sh : r.shifts) {
      any = true;
      epoch = std::min(epoch, sh.start);
    }
  if (any && epoch != 0) {
    for (auto& job : jobs)
      if (!job.injected) detail::shift_times(job, -epoch);
    for (auto& r : reviewers)
      for (auto& sh : r.shifts) {
        sh.start -= epoch;
        sh.end -= epoch;
      }
  }

  validate_jobs(jobs, cfg.mode, diags);
  if (!diags.empty()) {
    std::string msg = "scenario load failed";
    for (const auto& d : diags) msg += "\n  " + d;
    throw ConfigError(msg);
  }

  // Indices and tie-break ranks (ascending job id).
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    jobs[i].idx = static_cast<std::int32_t>(i);
    s.job_names.intern(jobs[i].id);
  }
  {
    std::vector<std::int32_t> by_id(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) by_id[i] = static_cast<std::int32_t>(i);
    std::sort(by_id.begin(), by_id.end(),
              [&](std::int32_t a, std::int32_t b) { return jobs[static_cast<std::size_t>(a)].id < jobs[static_cast<std::size_t>(b)].id; });
    for (std::size_t rank = 0; rank < by_id.size(); ++rank)
      jobs[static_cast<std::size_t>(by_id[rank])].sort_id = static_cast<std::uint32_t>(rank);
  }
  s.next_runtime_sort_id = static_cast<std::uint32_t>(jobs.size());

  s.jobs = std::move(jobs);
  s.reviewers = std::move(reviewers);
  s.eligibility.build(s.reviewers, s.cfg.queues);
  s.eligible_order.resize(s.reviewers.size());
  for (const auto& r : s.reviewers)
    s.eligible_order[static_cast<std::size_t>(r.idx)] = alloc::eligible_queues(r, s.cfg.queues, s.cfg.segments);
  s.qrt.resize(s.cfg.queues.size());
  s.rrt.resize(s.reviewers.size());
  s.reaper_done.assign(s.jobs.size(), 0);
  for (const auto& job : s.jobs)
    if (job.source == JobSource::proactive_classifier && job.auto_decision_ms)
      s.reaper_candidates.push_back(job.idx);

  // Pre-schedule the calendar.
  for (const auto& job : s.jobs) {
    if (s.mode == Mode::replay && !job.recorded.empty()) {
      for (std::size_t k = 0; k < job.recorded.size(); ++k) {
        const auto& step = job.recorded[k];
        EventKind kind;
        switch (step.kind) {
          case TrajKind::enqueued:
          case TrajKind::transferred:
          case TrajKind::skipped: kind = EventKind::job_arrival; break;
          case TrajKind::reviewed: kind = EventKind::reviewer_available; break;
          default: kind = EventKind::review_complete; break;
        }
        s.calendar.schedule(0, {step.t, kind, 0, job.idx, step.reviewer, step.queue,
                                static_cast<std::int32_t>(k)});
      }
      continue;
    }
    if (job.auto_decision_ms) {
      s.calendar.schedule(0, {*job.auto_decision_ms, EventKind::review_complete, 0, job.idx, -1, -1,
                              kAutoDecision});
      continue;
    }
    s.calendar.schedule(0, {job.enqueue_ms,
                            job.injected ? EventKind::synthetic_injection : EventKind::job_arrival, 0,
                            job.idx, -1, -1, -1});
  }
  for (const auto& r : s.reviewers)
    for (const auto& sh : r.shifts) {
      s.calendar.schedule(0, {sh.start, EventKind::shift_start, 0, -1, r.idx, -1, -1});
      s.calendar.schedule(0, {sh.end, EventKind::shift_end, 0, -1, r.idx, -1, -1});
    }
  for (const auto& q : s.cfg.queues)
    if (q.reorder_period_ms > 0 && q.reorder_period_ms <= s.horizon)
      s.calendar.schedule(0, {q.reorder_period_ms, EventKind::queue_resort, 0, -1, -1, q.idx, -1});
  for (std::size_t i = 0; i < s.cfg.reapers.size(); ++i) {
    const auto& rc = s.cfg.reapers[i];
    if (rc.scan_period_ms <= s.horizon)
      s.calendar.schedule(0, {rc.scan_period_ms, EventKind::reaper_scan, 0, -1, -1, -1,
                              static_cast<std::int32_t>(i)});
  }
  return s;
}

}  // namespace workload
}  // namespace revsim
