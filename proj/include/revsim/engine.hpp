#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "revsim/allocation.hpp"
#include "revsim/config.hpp"
#include "revsim/domain.hpp"
#include "revsim/event.hpp"
#include "revsim/log.hpp"
#include "revsim/policy.hpp"
#include "revsim/reaper.hpp"
#include "revsim/rng.hpp"
#include "revsim/util.hpp"

namespace revsim {

struct ReviewerRt {
  bool in_shift = false;
  bool busy = false;
  bool parked = false;
  bool wake_pending = false;
};

struct QueueRt {
  policy::RuntimeQueue open;
};

struct RunStats {
  std::uint64_t events_processed = 0;
  std::uint64_t assignments = 0;
  std::uint64_t percentage_multi_draws = 0;
  std::int64_t run_wall_us = 0;
};

// Replay step action codes carried in Event::aux (index into Job::recorded).
inline constexpr std::int32_t kAutoDecision = -2;

// One simulation run: entity tables, clock, calendar, and the append-only
// event log. Strictly single-threaded; runs are isolated from each other.
struct SimState {
  ScenarioConfig cfg;
  Interner job_names;
  Interner reviewer_names;
  std::vector<Job> jobs;
  std::vector<Reviewer> reviewers;
  alloc::EligibilityMatrix eligibility;
  std::vector<std::vector<std::int32_t>> eligible_order;  // per reviewer, ranked
  std::vector<std::int32_t> reaper_candidates;            // auto-decisioned proactive jobs

  Mode mode = Mode::counterfactual;
  SimTime clock = 0;
  SimTime horizon = 0;
  EventCalendar calendar;
  EventLog log;
  RunRng rng{1};
  std::vector<ReviewerRt> rrt;
  std::vector<QueueRt> qrt;
  std::set<std::int32_t> parked;          // idle reviewers awaiting work, by id order
  std::vector<std::uint8_t> reaper_done;  // candidate already sent to validation
  std::uint32_t next_runtime_sort_id = 0;
  std::uint64_t log_seq = 0;
  RunStats stats;

  // Per-segment daily assignment caps.
  std::int64_t caps_day = -1;
  std::map<std::int32_t, std::int64_t> caps_used;

  LogNames log_names() const { return {&job_names, &reviewer_names, &cfg.queue_names}; }
};

namespace engine_detail {

inline double score_for(SimState& s, std::int32_t queue, std::int32_t job, SimTime t) {
  const auto& q = s.cfg.queues[static_cast<std::size_t>(queue)];
  auto view = policy::make_view(s.jobs[static_cast<std::size_t>(job)], s.cfg.severity_weights);
  return policy::score_job(q.formula, view, t, q.sla_window_ms).value;
}

inline void emit(SimState& s, LogRecord r) {
  r.seq = s.log_seq++;
  s.log.append(r);
}

inline void wake_parked(SimState& s, std::int32_t queue, SimTime t) {
  if (s.mode == Mode::replay) return;
  // Reviewer-id order keeps wake-ups deterministic.
  for (std::int32_t r : s.parked) {
    auto& rt = s.rrt[static_cast<std::size_t>(r)];
    if (rt.wake_pending || !rt.in_shift || rt.busy) continue;
    if (!s.eligibility.eligible(r, queue)) continue;
    rt.wake_pending = true;
    s.calendar.schedule(s.clock, {t, EventKind::reviewer_available, 0, -1, r, -1, -1});
  }
}

// Inserts a job into a queue, handling bounded-queue overflow. The incoming
// job competes with residents; the lowest-scored one is transferred to the
// overflow queue or dropped.
inline void enqueue_job(SimState& s, std::int32_t job, std::int32_t queue, SimTime t, LogKind log_kind,
                        TrajKind traj_kind, std::int32_t from_queue = -1, std::int64_t aux2 = -1) {
  auto& j = s.jobs[static_cast<std::size_t>(job)];
  advance_state(j, {t, traj_kind, queue, -1});
  auto& q = s.qrt[static_cast<std::size_t>(queue)];
  q.open.insert(job, j.sort_id, score_for(s, queue, job, t));
  emit(s, {t, 0, log_kind, job, -1, queue, from_queue, 0, aux2});

  const auto& qcfg = s.cfg.queues[static_cast<std::size_t>(queue)];
  if (s.mode != Mode::replay && qcfg.max_size > 0 &&
      q.open.size() > static_cast<std::size_t>(qcfg.max_size)) {
    // The lowest-scored job is pushed down the overflow chain; a cycle or a
    // missing overflow target drops it with a log record.
    std::set<std::int32_t> seen{queue};
    std::int32_t cur = queue;
    std::int32_t victim = *s.qrt[static_cast<std::size_t>(cur)].open.evict_lowest();
    while (true) {
      auto& vj = s.jobs[static_cast<std::size_t>(victim)];
      std::int32_t target = s.cfg.queues[static_cast<std::size_t>(cur)].overflow_queue;
      if (target < 0 || !seen.insert(target).second) {
        vj.dropped = true;
        emit(s, {t, 0, LogKind::drop, victim, -1, cur});
        break;
      }
      advance_state(vj, {t, TrajKind::transferred, target, -1});
      s.qrt[static_cast<std::size_t>(target)].open.insert(victim, vj.sort_id,
                                                          score_for(s, target, victim, t));
      emit(s, {t, 0, LogKind::transfer, victim, -1, target, cur});
      wake_parked(s, target, t);
      const auto& tcfg = s.cfg.queues[static_cast<std::size_t>(target)];
      if (tcfg.max_size > 0 &&
          s.qrt[static_cast<std::size_t>(target)].open.size() > static_cast<std::size_t>(tcfg.max_size)) {
        victim = *s.qrt[static_cast<std::size_t>(target)].open.evict_lowest();
        cur = target;
        continue;
      }
      break;
    }
  }
  wake_parked(s, queue, t);
}

inline bool cap_exhausted(SimState& s, std::int32_t segment, SimTime t) {
  if (s.cfg.segment_daily_caps.empty()) return false;
  auto it = s.cfg.segment_daily_caps.find(segment);
  if (it == s.cfg.segment_daily_caps.end()) return false;
  std::int64_t day = t / kDay;
  if (day != s.caps_day) {
    s.caps_day = day;
    s.caps_used.clear();
  }
  auto used = s.caps_used.find(segment);
  return used != s.caps_used.end() && used->second >= it->second;
}

inline void note_assignment(SimState& s, std::int32_t segment, SimTime t) {
  if (s.cfg.segment_daily_caps.empty()) return;
  std::int64_t day = t / kDay;
  if (day != s.caps_day) {
    s.caps_day = day;
    s.caps_used.clear();
  }
  ++s.caps_used[segment];
}

// Picks the next job for an idle on-shift reviewer per the configured
// strategy and starts service. Returns false when nothing is available.
inline bool assign_next_job(SimState& s, std::int32_t reviewer, SimTime t) {
  const auto& order = s.eligible_order[static_cast<std::size_t>(reviewer)];
  auto blocked = [&](std::int32_t q) {
    if (s.qrt[static_cast<std::size_t>(q)].open.empty()) return true;
    return cap_exhausted(s, s.cfg.queues[static_cast<std::size_t>(q)].segment, t);
  };

  std::int32_t queue = -1;
  if (s.cfg.strategy.variant == alloc::StrategyVariant::stack_rank) {
    queue = alloc::pick_stack_rank(std::span<const std::int32_t>(order), blocked);
  } else {
    queue = alloc::pick_percentage(s.cfg.strategy, std::span<const std::int32_t>(order), blocked,
                                   t / kDay, s.rng, &s.stats.percentage_multi_draws);
  }
  if (queue < 0) return false;

  std::int32_t job = *s.qrt[static_cast<std::size_t>(queue)].open.dequeue_top();
  auto& j = s.jobs[static_cast<std::size_t>(job)];
  advance_state(j, {t, TrajKind::reviewed, queue, reviewer});
  j.assigned_reviewer = reviewer;
  auto& rt = s.rrt[static_cast<std::size_t>(reviewer)];
  rt.busy = true;
  emit(s, {t, 0, LogKind::assign, job, reviewer, queue});
  note_assignment(s, s.cfg.queues[static_cast<std::size_t>(queue)].segment, t);
  ++s.stats.assignments;
  s.calendar.schedule(s.clock, {t + j.handle_ms, EventKind::review_complete, 0, job, reviewer, queue, -1});
  return true;
}

inline void finish_decision(SimState& s, std::int32_t job, SimTime t, bool auto_decision,
                            bool more_recorded_steps) {
  auto& j = s.jobs[static_cast<std::size_t>(job)];
  std::int32_t reviewer = auto_decision ? -1 : j.assigned_reviewer;
  std::int32_t queue = j.current_queue;
  advance_state(j, {t, TrajKind::decisioned, queue, reviewer});
  std::int64_t aux = 0;
  if (auto_decision) {
    aux |= kDecisionAuto;  // classifier keeps borderline content; humans validate later
  } else if (j.true_label == TrueLabel::violating) {
    aux |= kActionRemove;
  }
  emit(s, {t, 0, LogKind::decision, job, reviewer, queue, -1, aux});
  j.assigned_reviewer = -1;

  if (s.mode == Mode::counterfactual && j.monitor_left > 0) {
    --j.monitor_left;
    advance_state(j, {t, TrajKind::paused, queue, -1});
    emit(s, {t, 0, LogKind::pause, job, -1, queue});
    s.calendar.schedule(s.clock,
                        {t + s.cfg.pause_duration_ms, EventKind::job_reopen, 0, job, -1, queue, -1});
    return;
  }
  if (!more_recorded_steps) {
    close_job(j);
    emit(s, {t, 0, LogKind::close, job});
  }
}

inline void release_reviewer(SimState& s, std::int32_t reviewer, SimTime t) {
  if (reviewer < 0) return;
  auto& rt = s.rrt[static_cast<std::size_t>(reviewer)];
  rt.busy = false;
  if (s.mode == Mode::counterfactual && rt.in_shift)
    s.calendar.schedule(s.clock, {t, EventKind::reviewer_available, 0, -1, reviewer, -1, -1});
}

// --- replay -----------------------------------------------------------------

inline void execute_replay_step(SimState& s, std::int32_t job, std::int32_t step_idx, SimTime t) {
  auto& j = s.jobs[static_cast<std::size_t>(job)];
  const auto& step = j.recorded[static_cast<std::size_t>(step_idx)];
  bool last = static_cast<std::size_t>(step_idx) + 1 == j.recorded.size();
  switch (step.kind) {
    case TrajKind::enqueued:
      enqueue_job(s, job, step.queue, t, LogKind::enqueue, TrajKind::enqueued);
      break;
    case TrajKind::transferred: {
      std::int32_t from = j.current_queue;
      if (from >= 0) s.qrt[static_cast<std::size_t>(from)].open.remove(job);
      enqueue_job(s, job, step.queue, t, LogKind::transfer, TrajKind::transferred, from);
      break;
    }
    case TrajKind::skipped:
      advance_state(j, {t, TrajKind::skipped, j.current_queue, -1});
      emit(s, {t, 0, LogKind::skip, job, step.reviewer, j.current_queue});
      break;
    case TrajKind::reviewed: {
      std::int32_t queue = j.current_queue;
      if (queue >= 0) s.qrt[static_cast<std::size_t>(queue)].open.remove(job);
      advance_state(j, {t, TrajKind::reviewed, queue, step.reviewer});
      j.assigned_reviewer = step.reviewer;
      if (step.reviewer >= 0) s.rrt[static_cast<std::size_t>(step.reviewer)].busy = true;
      emit(s, {t, 0, LogKind::assign, job, step.reviewer, queue});
      break;
    }
    case TrajKind::decisioned: {
      bool auto_decision = j.state == JobState::created;
      std::int32_t reviewer = j.assigned_reviewer;
      finish_decision(s, job, t, auto_decision, !last);
      if (reviewer >= 0) s.rrt[static_cast<std::size_t>(reviewer)].busy = false;
      break;
    }
    case TrajKind::paused:
      advance_state(j, {t, TrajKind::paused, j.current_queue, -1});
      emit(s, {t, 0, LogKind::pause, job, -1, j.current_queue});
      break;
    case TrajKind::reopened:
      enqueue_job(s, job, step.queue >= 0 ? step.queue : j.current_queue, t, LogKind::reopen,
                  TrajKind::reopened);
      break;
  }
}

}  // namespace engine_detail

// --- event handlers ----------------------------------------------------------

inline void handle_job_arrival(SimState& s, const Event& e) {
  if (s.mode == Mode::replay && e.aux >= 0) {
    engine_detail::execute_replay_step(s, e.job, e.aux, e.t);
    return;
  }
  auto& j = s.jobs[static_cast<std::size_t>(e.job)];
  engine_detail::enqueue_job(s, e.job, j.queue0, e.t,
                             e.kind == EventKind::synthetic_injection ? LogKind::inject : LogKind::enqueue,
                             TrajKind::enqueued);
}

// An available reviewer scans eligible queues for the top job. Stale wake-ups
// (busy, off shift) fall through silently.
inline void handle_reviewer_available(SimState& s, const Event& e) {
  if (s.mode == Mode::replay && e.aux >= 0) {
    engine_detail::execute_replay_step(s, e.job, e.aux, e.t);
    return;
  }
  auto& rt = s.rrt[static_cast<std::size_t>(e.reviewer)];
  rt.wake_pending = false;
  if (!rt.in_shift || rt.busy) return;
  if (rt.parked) {
    rt.parked = false;
    s.parked.erase(e.reviewer);
  }
  if (!engine_detail::assign_next_job(s, e.reviewer, e.t)) {
    rt.parked = true;
    s.parked.insert(e.reviewer);
    if (!s.cfg.segment_daily_caps.empty()) {
      // A capped segment may free up at the next day boundary.
      SimTime next_day = (e.t / kDay + 1) * kDay;
      if (next_day <= s.horizon) {
        rt.wake_pending = true;
        s.calendar.schedule(s.clock, {next_day, EventKind::reviewer_available, 0, -1, e.reviewer, -1, -1});
      }
    }
  }
}

inline void handle_review_complete(SimState& s, const Event& e) {
  if (s.mode == Mode::replay && e.aux >= 0) {
    engine_detail::execute_replay_step(s, e.job, e.aux, e.t);
    return;
  }
  if (e.aux == kAutoDecision) {
    engine_detail::finish_decision(s, e.job, e.t, true, false);
    return;
  }
  engine_detail::finish_decision(s, e.job, e.t, false, false);
  engine_detail::release_reviewer(s, e.reviewer, e.t);
}

inline void handle_shift_start(SimState& s, const Event& e) {
  auto& rt = s.rrt[static_cast<std::size_t>(e.reviewer)];
  rt.in_shift = true;
  engine_detail::emit(s, {e.t, 0, LogKind::shift_start, -1, e.reviewer});
  if (s.mode == Mode::counterfactual && !rt.busy)
    s.calendar.schedule(s.clock, {e.t, EventKind::reviewer_available, 0, -1, e.reviewer, -1, -1});
}

// Non-preemptive: an in-flight review finishes after the shift (overtime).
inline void handle_shift_end(SimState& s, const Event& e) {
  auto& rt = s.rrt[static_cast<std::size_t>(e.reviewer)];
  rt.in_shift = false;
  if (rt.parked) {
    rt.parked = false;
    s.parked.erase(e.reviewer);
  }
  engine_detail::emit(s, {e.t, 0, LogKind::shift_end, -1, e.reviewer});
}

inline void handle_queue_resort(SimState& s, const Event& e) {
  auto& q = s.qrt[static_cast<std::size_t>(e.queue)];
  q.open.resort([&](std::int32_t job) { return engine_detail::score_for(s, e.queue, job, e.t); });
  engine_detail::emit(s, {e.t, 0, LogKind::resort, -1, -1, e.queue, -1,
                          static_cast<std::int64_t>(q.open.size())});
  Duration period = s.cfg.queues[static_cast<std::size_t>(e.queue)].reorder_period_ms;
  if (period > 0 && e.t + period <= s.horizon)
    s.calendar.schedule(s.clock, {e.t + period, EventKind::queue_resort, 0, -1, -1, e.queue, -1});
}

inline void handle_reaper_scan(SimState& s, const Event& e) {
  const auto& crit = s.cfg.reapers[static_cast<std::size_t>(e.aux)];
  std::int64_t scanned = 0;
  std::int64_t selected = 0;
  for (std::int32_t cand : s.reaper_candidates) {
    if (s.reaper_done[static_cast<std::size_t>(cand)]) continue;
    const auto& cj = s.jobs[static_cast<std::size_t>(cand)];
    if (!cj.auto_decision_ms || *cj.auto_decision_ms > e.t) continue;
    ++scanned;
    if (!reaper::should_enqueue(cj, e.t, crit, s.cfg.seed)) continue;
    s.reaper_done[static_cast<std::size_t>(cand)] = 1;
    ++selected;

    Job v;
    v.idx = static_cast<std::int32_t>(s.jobs.size());
    v.sort_id = s.next_runtime_sort_id++;
    v.id = cj.id + "#v";
    v.enqueue_ms = e.t;
    v.source = JobSource::reaper_validation;
    v.content_type = cj.content_type;
    v.market = cj.market;
    v.language = cj.language;
    v.violation_type = cj.violation_type;
    v.classifier_score = cj.classifier_score;
    v.p_escalate = cj.p_escalate;
    v.topic_scores = cj.topic_scores;
    v.severity = cj.severity;
    v.handle_ms = cj.handle_ms;
    v.true_label = cj.true_label;
    v.views = cj.views;
    v.predicted_views = cj.predicted_views;
    std::int32_t vidx = v.idx;
    s.job_names.intern(v.id);
    s.jobs.push_back(std::move(v));
    s.reaper_done.push_back(0);
    engine_detail::enqueue_job(s, vidx, crit.target_queue, e.t, LogKind::reaper_enqueue,
                               TrajKind::enqueued, -1, cand);
  }
  engine_detail::emit(
      s, {e.t, 0, LogKind::reaper_scan, -1, -1, crit.target_queue, -1, scanned, selected});
  if (e.t + crit.scan_period_ms <= s.horizon)
    s.calendar.schedule(s.clock,
                        {e.t + crit.scan_period_ms, EventKind::reaper_scan, 0, -1, -1, -1, e.aux});
}

inline void handle_job_reopen(SimState& s, const Event& e) {
  if (s.mode == Mode::replay && e.aux >= 0) {
    engine_detail::execute_replay_step(s, e.job, e.aux, e.t);
    return;
  }
  engine_detail::enqueue_job(s, e.job, e.queue, e.t, LogKind::reopen, TrajKind::reopened);
}

inline void dispatch(SimState& s, const Event& e) {
  switch (e.kind) {
    case EventKind::job_arrival:
    case EventKind::synthetic_injection: handle_job_arrival(s, e); break;
    case EventKind::reviewer_available: handle_reviewer_available(s, e); break;
    case EventKind::review_complete: handle_review_complete(s, e); break;
    case EventKind::shift_start: handle_shift_start(s, e); break;
    case EventKind::shift_end: handle_shift_end(s, e); break;
    case EventKind::queue_resort: handle_queue_resort(s, e); break;
    case EventKind::reaper_scan: handle_reaper_scan(s, e); break;
    case EventKind::job_reopen: handle_job_reopen(s, e); break;
  }
}

// Processes every event up to and including `horizon`, in (time, kind rank,
// scheduling order). An empty calendar just fast-forwards the clock.
inline void run_until(SimState& s, SimTime horizon) {
  auto t0 = std::chrono::steady_clock::now();
  while (!s.calendar.empty() && s.calendar.top().t <= horizon) {
    Event e = s.calendar.pop();
    if (e.t < s.clock) throw ClockError("event calendar returned a past event");
    s.clock = e.t;
    dispatch(s, e);
    ++s.stats.events_processed;
  }
  s.clock = horizon;
  auto t1 = std::chrono::steady_clock::now();
  s.stats.run_wall_us += std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

inline void run(SimState& s) { run_until(s, s.horizon); }

}  // namespace revsim
