#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsim/engine.hpp"
#include "revsim/log.hpp"

namespace revsim {
namespace metrics {

struct MetricSeries {
  std::string name;
  std::vector<std::pair<SimTime, double>> points;  // strictly increasing times
};

inline bool adds_to_queue(LogKind k) {
  return k == LogKind::enqueue || k == LogKind::inject || k == LogKind::reopen ||
         k == LogKind::reaper_enqueue;
}

// Open jobs in one queue over time, reconstructed from the log.
inline MetricSeries queue_load_series(const EventLog& log, std::int32_t queue) {
  MetricSeries out;
  out.name = "queue_load";
  double level = 0.0;
  std::optional<SimTime> pending_t;
  double pending_level = 0.0;
  auto flush = [&](SimTime t) {
    if (pending_t && *pending_t != t) {
      out.points.emplace_back(*pending_t, pending_level);
      pending_t.reset();
    }
  };
  for (const auto& r : log.records()) {
    double delta = 0.0;
    if (r.queue == queue && adds_to_queue(r.kind)) delta += 1.0;
    if (r.queue == queue && (r.kind == LogKind::assign || r.kind == LogKind::drop)) delta -= 1.0;
    if (r.kind == LogKind::transfer) {
      if (r.queue == queue) delta += 1.0;
      if (r.from_queue == queue) delta -= 1.0;
    }
    if (delta == 0.0) continue;
    flush(r.t);
    level += delta;
    pending_t = r.t;
    pending_level = level;
  }
  if (pending_t) out.points.emplace_back(*pending_t, pending_level);
  return out;
}

inline std::int64_t peak_load(const MetricSeries& series) {
  double peak = 0.0;
  for (const auto& [t, v] : series.points) peak = std::max(peak, v);
  return static_cast<std::int64_t>(peak);
}

// Jobs in queue or in service across the whole system.
inline MetricSeries number_in_system_series(const EventLog& log, std::size_t njobs) {
  MetricSeries out;
  out.name = "in_system";
  std::vector<std::uint8_t> entered(njobs, 0);
  double level = 0.0;
  std::optional<SimTime> pending_t;
  double pending_level = 0.0;
  for (const auto& r : log.records()) {
    double delta = 0.0;
    if (adds_to_queue(r.kind) && r.job >= 0) {
      entered[static_cast<std::size_t>(r.job)] = 1;
      delta += 1.0;
    } else if (r.kind == LogKind::decision && r.job >= 0 && entered[static_cast<std::size_t>(r.job)]) {
      entered[static_cast<std::size_t>(r.job)] = 0;
      delta -= 1.0;
    } else if (r.kind == LogKind::drop && r.job >= 0 && entered[static_cast<std::size_t>(r.job)]) {
      entered[static_cast<std::size_t>(r.job)] = 0;
      delta -= 1.0;
    }
    if (delta == 0.0) continue;
    if (pending_t && *pending_t != r.t) out.points.emplace_back(*pending_t, pending_level);
    level += delta;
    pending_t = r.t;
    pending_level = level;
  }
  if (pending_t) out.points.emplace_back(*pending_t, pending_level);
  return out;
}

inline double time_average(const MetricSeries& series, SimTime start, SimTime end) {
  if (end <= start) return 0.0;
  double acc = 0.0;
  double level = 0.0;
  SimTime prev = start;
  for (const auto& [t, v] : series.points) {
    if (t >= end) break;
    if (t > prev) acc += level * static_cast<double>(t - prev);
    if (t >= start) {
      prev = std::max(t, start);
    }
    level = v;
  }
  acc += level * static_cast<double>(end - prev);
  return acc / static_cast<double>(end - start);
}

// Per-job facts extracted in one pass over the log.
struct JobOutcome {
  SimTime first_enqueue = -1;
  SimTime last_decision = -1;
  std::int32_t decision_queue = -1;
  std::int32_t decision_reviewer = -1;
  bool auto_decision = false;
  bool removed = false;
  bool human_reviewed = false;
  bool dropped = false;
};

struct LogExtract {
  std::vector<JobOutcome> outcomes;
  // Closed busy intervals per reviewer plus the start of any in-flight review.
  std::vector<std::vector<std::pair<SimTime, SimTime>>> busy;
  std::vector<SimTime> busy_open;  // -1 when idle
  std::vector<std::int32_t> reaper_selected;  // candidate job idx per validation enqueue
};

inline LogExtract extract(const EventLog& log, std::size_t njobs, std::size_t nreviewers) {
  LogExtract x;
  x.outcomes.resize(njobs);
  x.busy.resize(nreviewers);
  x.busy_open.assign(nreviewers, -1);
  std::vector<SimTime> assign_t(njobs, -1);
  std::vector<std::int32_t> assign_r(njobs, -1);
  for (const auto& r : log.records()) {
    switch (r.kind) {
      case LogKind::enqueue:
      case LogKind::inject:
      case LogKind::reopen:
      case LogKind::reaper_enqueue: {
        auto& o = x.outcomes[static_cast<std::size_t>(r.job)];
        if (o.first_enqueue < 0) o.first_enqueue = r.t;
        if (r.kind == LogKind::reaper_enqueue) x.reaper_selected.push_back(static_cast<std::int32_t>(r.aux2));
        break;
      }
      case LogKind::assign: {
        auto& o = x.outcomes[static_cast<std::size_t>(r.job)];
        o.human_reviewed = true;
        assign_t[static_cast<std::size_t>(r.job)] = r.t;
        assign_r[static_cast<std::size_t>(r.job)] = r.reviewer;
        if (r.reviewer >= 0) x.busy_open[static_cast<std::size_t>(r.reviewer)] = r.t;
        break;
      }
      case LogKind::decision: {
        auto& o = x.outcomes[static_cast<std::size_t>(r.job)];
        o.last_decision = r.t;
        o.decision_queue = r.queue;
        o.decision_reviewer = r.reviewer;
        o.auto_decision = (r.aux & kDecisionAuto) != 0;
        o.removed = (r.aux & kActionRemove) != 0;
        std::int32_t rev = assign_r[static_cast<std::size_t>(r.job)];
        if (rev >= 0) {
          x.busy[static_cast<std::size_t>(rev)].emplace_back(assign_t[static_cast<std::size_t>(r.job)], r.t);
          x.busy_open[static_cast<std::size_t>(rev)] = -1;
          assign_r[static_cast<std::size_t>(r.job)] = -1;
        }
        break;
      }
      case LogKind::drop: x.outcomes[static_cast<std::size_t>(r.job)].dropped = true; break;
      default: break;
    }
  }
  return x;
}

// Busy time over scheduled time for a reviewer subset inside a window.
// Absent when nothing was scheduled. Overtime keeps counting as busy, so the
// ratio may slightly exceed 1.
template <typename Pred>
std::optional<double> utilization(const LogExtract& x, const std::vector<Reviewer>& reviewers,
                                  Pred&& include, SimTime window_lo, SimTime window_hi) {
  double busy = 0.0;
  double scheduled = 0.0;
  for (const auto& r : reviewers) {
    if (!include(r)) continue;
    scheduled += static_cast<double>(r.scheduled_ms(window_lo, window_hi));
    for (const auto& [lo, hi] : x.busy[static_cast<std::size_t>(r.idx)])
      busy += static_cast<double>(std::max<SimTime>(0, std::min(hi, window_hi) - std::max(lo, window_lo)));
    SimTime open = x.busy_open[static_cast<std::size_t>(r.idx)];
    if (open >= 0) busy += static_cast<double>(std::max<SimTime>(0, window_hi - std::max(open, window_lo)));
  }
  if (scheduled <= 0.0) return std::nullopt;
  return busy / scheduled;
}

template <typename Filter>
std::optional<double> avg_tat_s(const LogExtract& x, Filter&& include) {
  double total = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.outcomes.size(); ++i) {
    const auto& o = x.outcomes[i];
    if (o.last_decision < 0 || o.first_enqueue < 0) continue;
    if (!include(static_cast<std::int32_t>(i), o)) continue;
    total += to_seconds(o.last_decision - o.first_enqueue);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return total / static_cast<double>(n);
}

template <typename Filter>
std::optional<double> tat_percentile_s(const LogExtract& x, double p, Filter&& include) {
  std::vector<double> tats;
  for (std::size_t i = 0; i < x.outcomes.size(); ++i) {
    const auto& o = x.outcomes[i];
    if (o.last_decision < 0 || o.first_enqueue < 0) continue;
    if (!include(static_cast<std::int32_t>(i), o)) continue;
    tats.push_back(to_seconds(o.last_decision - o.first_enqueue));
  }
  if (tats.empty()) return std::nullopt;
  std::sort(tats.begin(), tats.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(tats.size())));
  if (rank > 0) --rank;
  return tats[std::min(rank, tats.size() - 1)];
}

// Fraction of decisioned jobs whose TAT exceeds the SLA bound of the queue
// they were decided in. Jobs in queues without a bound are excluded.
inline std::optional<double> sla_violation_rate(const LogExtract& x, const ScenarioConfig& cfg) {
  std::size_t n = 0;
  std::size_t violated = 0;
  for (const auto& o : x.outcomes) {
    if (o.last_decision < 0 || o.first_enqueue < 0 || o.decision_queue < 0) continue;
    Duration bound = cfg.queues[static_cast<std::size_t>(o.decision_queue)].sla_window_ms;
    if (bound <= 0) continue;
    ++n;
    if (o.last_decision - o.first_enqueue > bound) ++violated;
  }
  if (n == 0) return std::nullopt;
  return static_cast<double>(violated) / static_cast<double>(n);
}

// Severity-weighted predicted views at decision time per second of handling.
inline double review_value(const Job& job, SimTime decision_time,
                           const std::map<Severity, double>& weights) {
  auto it = weights.find(job.severity);
  double w = it == weights.end() ? 1.0 : it->second;
  double views = static_cast<double>(content_views_at(job.predicted_views, decision_time));
  return w * views / to_seconds(job.handle_ms);
}

// Sums review value over actioned jobs (violating content removed by review).
inline double total_rv(const LogExtract& x, const std::vector<Job>& jobs,
                       const std::map<Severity, double>& weights) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.outcomes.size(); ++i) {
    const auto& o = x.outcomes[i];
    if (o.last_decision < 0 || o.auto_decision || !o.removed) continue;
    if (jobs[i].true_label != TrueLabel::violating) continue;
    total += review_value(jobs[i], o.last_decision, weights);
  }
  return total;
}

inline std::pair<std::int64_t, std::int64_t> jobs_closed_actioned(const LogExtract& x,
                                                                  const std::vector<Job>& jobs) {
  std::int64_t closed = 0;
  std::int64_t actioned = 0;
  for (std::size_t i = 0; i < x.outcomes.size(); ++i) {
    const auto& o = x.outcomes[i];
    if (o.last_decision < 0) continue;
    ++closed;
    if (o.removed && jobs[i].true_label == TrueLabel::violating) ++actioned;
  }
  return {closed, actioned};
}

inline std::optional<double> views_quantile(const std::vector<Job>& jobs, double p) {
  std::vector<std::int64_t> finals;
  finals.reserve(jobs.size());
  for (const auto& j : jobs) finals.push_back(j.views.final_views());
  if (finals.empty()) return std::nullopt;
  std::sort(finals.begin(), finals.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(finals.size())));
  if (rank > 0) --rank;
  return static_cast<double>(finals[std::min(rank, finals.size() - 1)]);
}

// Fraction of high-distribution content (final actual views strictly above
// the run's percentile threshold) that received a human decision.
inline std::optional<double> coverage(const LogExtract& x, const std::vector<Job>& jobs, double percentile,
                                      int topic = -1) {
  auto threshold = views_quantile(jobs, percentile);
  if (!threshold) return std::nullopt;
  std::size_t denom = 0;
  std::size_t num = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (static_cast<double>(jobs[i].views.final_views()) <= *threshold) continue;
    if (topic >= 0 && jobs[i].topic_scores[static_cast<std::size_t>(topic)] < 0.5) continue;
    ++denom;
    const auto& o = x.outcomes[i];
    if (o.last_decision >= 0 && !o.auto_decision && o.human_reviewed) ++num;
  }
  if (denom == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(denom);
}

inline std::optional<double> topic_coverage(const LogExtract& x, const std::vector<Job>& jobs,
                                            int topic, double percentile) {
  return coverage(x, jobs, percentile, topic);
}

// Share of high-severity violating candidates the validation pass never
// sampled. The candidate pool is auto-decisioned proactive content.
inline std::optional<double> misspecification_rate(const LogExtract& x, const std::vector<Job>& jobs) {
  std::vector<std::uint8_t> selected(jobs.size(), 0);
  for (std::int32_t cand : x.reaper_selected)
    if (cand >= 0 && static_cast<std::size_t>(cand) < jobs.size())
      selected[static_cast<std::size_t>(cand)] = 1;
  std::size_t denom = 0;
  std::size_t missed = 0;
  for (const auto& j : jobs) {
    if (j.source != JobSource::proactive_classifier || !j.auto_decision_ms) continue;
    if (j.true_label != TrueLabel::violating) continue;
    if (j.severity != Severity::high && j.severity != Severity::very_high) continue;
    ++denom;
    if (!selected[static_cast<std::size_t>(j.idx)]) ++missed;
  }
  if (denom == 0) return std::nullopt;
  return static_cast<double>(missed) / static_cast<double>(denom);
}

// --- run summary ---------------------------------------------------------------

struct QueueSummary {
  std::string id;
  std::int64_t jobs_closed = 0;
  std::optional<double> avg_tat_s;
  std::optional<double> sla_violation_rate;
  std::int64_t peak_load = 0;
};

struct RunSummary {
  std::string mode;
  std::uint64_t seed = 0;
  SimTime horizon_ms = 0;

  std::int64_t jobs_total = 0;
  std::int64_t jobs_closed = 0;
  std::int64_t jobs_actioned = 0;
  std::int64_t jobs_auto = 0;
  std::int64_t jobs_dropped = 0;
  std::int64_t jobs_open = 0;

  std::optional<double> avg_tat_s;
  std::optional<double> tat_p50_s, tat_p90_s, tat_p99_s;
  std::optional<double> sla_violation_rate;
  std::int64_t escalated_count = 0;
  std::optional<double> escalated_avg_tat_s;

  std::optional<double> utilization;
  std::map<std::string, double> utilization_by_location;
  double total_rv = 0.0;
  std::optional<double> coverage;
  std::array<std::optional<double>, 3> topic_coverage;
  std::optional<double> misspecification_rate;

  std::vector<QueueSummary> per_queue;

  std::uint64_t events_processed = 0;
  std::int64_t run_wall_us = 0;
  double events_per_sec = 0.0;
};

inline RunSummary summarize(const SimState& s) {
  RunSummary out;
  out.mode = to_string(s.mode);
  out.seed = s.cfg.seed;
  out.horizon_ms = s.horizon;
  out.jobs_total = static_cast<std::int64_t>(s.jobs.size());

  LogExtract x = extract(s.log, s.jobs.size(), s.reviewers.size());

  auto [closed, actioned] = jobs_closed_actioned(x, s.jobs);
  out.jobs_closed = closed;
  out.jobs_actioned = actioned;
  for (const auto& o : x.outcomes) {
    if (o.last_decision >= 0 && o.auto_decision) ++out.jobs_auto;
    if (o.dropped) ++out.jobs_dropped;
  }
  out.jobs_open = out.jobs_total - out.jobs_closed - out.jobs_dropped;

  auto all = [](std::int32_t, const JobOutcome&) { return true; };
  out.avg_tat_s = avg_tat_s(x, all);
  out.tat_p50_s = tat_percentile_s(x, 0.50, all);
  out.tat_p90_s = tat_percentile_s(x, 0.90, all);
  out.tat_p99_s = tat_percentile_s(x, 0.99, all);
  out.sla_violation_rate = sla_violation_rate(x, s.cfg);

  auto escalated = [&](std::int32_t job, const JobOutcome&) {
    return s.jobs[static_cast<std::size_t>(job)].p_escalate >= s.cfg.escalated_threshold;
  };
  for (const auto& j : s.jobs)
    if (j.p_escalate >= s.cfg.escalated_threshold) ++out.escalated_count;
  out.escalated_avg_tat_s = avg_tat_s(x, escalated);

  out.utilization = utilization(x, s.reviewers, [](const Reviewer&) { return true; }, 0, s.horizon);
  {
    std::set<std::string> locations;
    for (const auto& r : s.reviewers) locations.insert(r.location);
    for (const auto& loc : locations) {
      auto u = utilization(x, s.reviewers, [&](const Reviewer& r) { return r.location == loc; }, 0,
                           s.horizon);
      if (u) out.utilization_by_location[loc] = *u;
    }
  }
  out.total_rv = total_rv(x, s.jobs, s.cfg.severity_weights);
  out.coverage = coverage(x, s.jobs, s.cfg.coverage_percentile);
  for (int topic = 0; topic < 3; ++topic)
    out.topic_coverage[static_cast<std::size_t>(topic)] =
        topic_coverage(x, s.jobs, topic, s.cfg.coverage_percentile);
  out.misspecification_rate = misspecification_rate(x, s.jobs);

  for (const auto& q : s.cfg.queues) {
    QueueSummary qs;
    qs.id = q.id;
    auto in_queue = [&](std::int32_t, const JobOutcome& o) { return o.decision_queue == q.idx; };
    for (const auto& o : x.outcomes)
      if (o.last_decision >= 0 && o.decision_queue == q.idx) ++qs.jobs_closed;
    qs.avg_tat_s = avg_tat_s(x, in_queue);
    if (q.sla_window_ms > 0) {
      std::size_t n = 0, v = 0;
      for (const auto& o : x.outcomes) {
        if (o.last_decision < 0 || o.first_enqueue < 0 || o.decision_queue != q.idx) continue;
        ++n;
        if (o.last_decision - o.first_enqueue > q.sla_window_ms) ++v;
      }
      if (n > 0) qs.sla_violation_rate = static_cast<double>(v) / static_cast<double>(n);
    }
    qs.peak_load = peak_load(queue_load_series(s.log, q.idx));
    out.per_queue.push_back(std::move(qs));
  }

  out.events_processed = s.stats.events_processed;
  out.run_wall_us = s.stats.run_wall_us;
  out.events_per_sec = s.stats.run_wall_us > 0
                           ? static_cast<double>(s.stats.events_processed) * 1e6 /
                                 static_cast<double>(s.stats.run_wall_us)
                           : 0.0;
  return out;
}

inline nlohmann::ordered_json to_json(const RunSummary& r) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["horizon_ms"] = r.horizon_ms;
  j["jobs_total"] = r.jobs_total;
  j["jobs_closed"] = r.jobs_closed;
  j["jobs_actioned"] = r.jobs_actioned;
  j["jobs_auto"] = r.jobs_auto;
  j["jobs_dropped"] = r.jobs_dropped;
  j["jobs_open"] = r.jobs_open;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  put("avg_tat_s", r.avg_tat_s);
  put("tat_p50_s", r.tat_p50_s);
  put("tat_p90_s", r.tat_p90_s);
  put("tat_p99_s", r.tat_p99_s);
  put("sla_violation_rate", r.sla_violation_rate);
  j["escalated_count"] = r.escalated_count;
  put("escalated_avg_tat_s", r.escalated_avg_tat_s);
  put("utilization", r.utilization);
  j["utilization_by_location"] = r.utilization_by_location;
  j["total_rv"] = r.total_rv;
  put("coverage", r.coverage);
  for (int topic = 0; topic < 3; ++topic)
    put(("topic" + std::to_string(topic + 1) + "_coverage").c_str(),
        r.topic_coverage[static_cast<std::size_t>(topic)]);
  put("misspecification_rate", r.misspecification_rate);
  j["per_queue"] = nlohmann::ordered_json::object();
  for (const auto& q : r.per_queue) {
    nlohmann::ordered_json qj;
    qj["jobs_closed"] = q.jobs_closed;
    if (q.avg_tat_s) qj["avg_tat_s"] = *q.avg_tat_s;
    else qj["avg_tat_s"] = nullptr;
    if (q.sla_violation_rate) qj["sla_violation_rate"] = *q.sla_violation_rate;
    else qj["sla_violation_rate"] = nullptr;
    qj["peak_load"] = q.peak_load;
    j["per_queue"][q.id] = qj;
  }
  j["timing"] = {{"events_processed", r.events_processed},
                 {"run_wall_us", r.run_wall_us},
                 {"events_per_sec", r.events_per_sec}};
  return j;
}

inline void write_series_csv(const MetricSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open " + path);
  out << "time_ms,value\n";
  for (const auto& [t, v] : series.points) out << t << ',' << v << '\n';
}

}  // namespace metrics
}  // namespace revsim
