#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revsim/errors.hpp"
#include "revsim/time.hpp"

namespace revsim {

enum class JobSource : std::uint8_t { user_report, proactive_classifier, disaggregated, reaper_validation };
enum class ContentType : std::uint8_t { text, image, video, other };
enum class Severity : std::uint8_t { low, medium, high, very_high };
enum class TrueLabel : std::uint8_t { violating, benign };
enum class JobState : std::uint8_t { created, enqueued, assigned, paused, decisioned, closed };

enum class TrajKind : std::uint8_t { enqueued, transferred, skipped, reviewed, decisioned, reopened, paused };

inline const char* to_string(JobSource s) {
  switch (s) {
    case JobSource::user_report: return "user_report";
    case JobSource::proactive_classifier: return "proactive_classifier";
    case JobSource::disaggregated: return "disaggregated";
    case JobSource::reaper_validation: return "reaper_validation";
  }
  return "?";
}
inline const char* to_string(ContentType c) {
  switch (c) {
    case ContentType::text: return "text";
    case ContentType::image: return "image";
    case ContentType::video: return "video";
    case ContentType::other: return "other";
  }
  return "?";
}
inline const char* to_string(Severity s) {
  switch (s) {
    case Severity::low: return "low";
    case Severity::medium: return "medium";
    case Severity::high: return "high";
    case Severity::very_high: return "very_high";
  }
  return "?";
}
inline const char* to_string(TrueLabel l) { return l == TrueLabel::violating ? "violating" : "benign"; }
inline const char* to_string(JobState s) {
  switch (s) {
    case JobState::created: return "created";
    case JobState::enqueued: return "enqueued";
    case JobState::assigned: return "assigned";
    case JobState::paused: return "paused";
    case JobState::decisioned: return "decisioned";
    case JobState::closed: return "closed";
  }
  return "?";
}
inline const char* to_string(TrajKind k) {
  switch (k) {
    case TrajKind::enqueued: return "enqueued";
    case TrajKind::transferred: return "transferred";
    case TrajKind::skipped: return "skipped";
    case TrajKind::reviewed: return "reviewed";
    case TrajKind::decisioned: return "decisioned";
    case TrajKind::reopened: return "reopened";
    case TrajKind::paused: return "paused";
  }
  return "?";
}

template <typename E>
std::optional<E> parse_enum(std::string_view s);

template <>
inline std::optional<JobSource> parse_enum<JobSource>(std::string_view s) {
  if (s == "user_report") return JobSource::user_report;
  if (s == "proactive_classifier") return JobSource::proactive_classifier;
  if (s == "disaggregated") return JobSource::disaggregated;
  if (s == "reaper_validation") return JobSource::reaper_validation;
  return std::nullopt;
}
template <>
inline std::optional<ContentType> parse_enum<ContentType>(std::string_view s) {
  if (s == "text") return ContentType::text;
  if (s == "image") return ContentType::image;
  if (s == "video") return ContentType::video;
  if (s == "other") return ContentType::other;
  return std::nullopt;
}
template <>
inline std::optional<Severity> parse_enum<Severity>(std::string_view s) {
  if (s == "low") return Severity::low;
  if (s == "medium") return Severity::medium;
  if (s == "high") return Severity::high;
  if (s == "very_high") return Severity::very_high;
  return std::nullopt;
}
template <>
inline std::optional<TrueLabel> parse_enum<TrueLabel>(std::string_view s) {
  if (s == "violating") return TrueLabel::violating;
  if (s == "benign") return TrueLabel::benign;
  return std::nullopt;
}
template <>
inline std::optional<TrajKind> parse_enum<TrajKind>(std::string_view s) {
  if (s == "enqueued") return TrajKind::enqueued;
  if (s == "transferred") return TrajKind::transferred;
  if (s == "skipped") return TrajKind::skipped;
  if (s == "reviewed") return TrajKind::reviewed;
  if (s == "decisioned") return TrajKind::decisioned;
  if (s == "reopened") return TrajKind::reopened;
  if (s == "paused") return TrajKind::paused;
  return std::nullopt;
}

// Cumulative content views sampled at increasing times. Views are a point
// process, so lookups use step interpolation: the last sample at or before t.
struct ContentViewTrajectory {
  std::vector<std::pair<SimTime, std::int64_t>> samples;

  bool valid() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].second < 0) return false;
      if (i > 0 && samples[i].first <= samples[i - 1].first) return false;
      if (i > 0 && samples[i].second < samples[i - 1].second) return false;
    }
    return true;
  }

  std::int64_t final_views() const { return samples.empty() ? 0 : samples.back().second; }
};

inline std::int64_t content_views_at(const ContentViewTrajectory& traj, SimTime t) {
  const auto& s = traj.samples;
  auto it = std::upper_bound(s.begin(), s.end(), t,
                             [](SimTime v, const auto& sample) { return v < sample.first; });
  if (it == s.begin()) return 0;
  return std::prev(it)->second;
}

struct TrajectoryEvent {
  SimTime t = 0;
  TrajKind kind = TrajKind::enqueued;
  std::int32_t queue = -1;     // queue index; -1 when not applicable
  std::int32_t reviewer = -1;  // recorded reviewer for `reviewed` steps
};

struct Job {
  std::int32_t idx = -1;        // dense table index
  std::uint32_t sort_id = 0;    // tie-break rank, ascending job id
  std::string id;
  SimTime enqueue_ms = 0;
  JobSource source = JobSource::user_report;
  ContentType content_type = ContentType::text;
  std::string market;
  std::string language;
  std::string violation_type;
  double classifier_score = 0.0;
  double p_escalate = 0.0;
  std::array<double, 3> topic_scores{0.0, 0.0, 0.0};
  Severity severity = Severity::low;
  Duration handle_ms = 1;
  TrueLabel true_label = TrueLabel::benign;
  ContentViewTrajectory views;
  ContentViewTrajectory predicted_views;
  std::int32_t queue0 = -1;                  // initial queue
  std::optional<SimTime> auto_decision_ms;   // ML decision without human review
  int monitor_cycles = 0;                    // pause/reopen rounds after each decision
  std::optional<double> weight;              // explicit bang-per-buck weight
  bool injected = false;                     // synthetic one-off volume

  // Recorded history (input, replayed verbatim in replay mode).
  std::vector<TrajectoryEvent> recorded;

  // Runtime lifecycle.
  JobState state = JobState::created;
  std::int32_t current_queue = -1;
  std::int32_t assigned_reviewer = -1;
  int monitor_left = 0;
  std::vector<TrajectoryEvent> trajectory_log;
  bool dropped = false;
};

struct Shift {
  SimTime start = 0;
  SimTime end = 0;
};

struct Reviewer {
  std::int32_t idx = -1;
  std::string id;
  std::string location;
  std::vector<std::string> skills;  // sorted
  std::vector<Shift> shifts;        // ordered, pairwise disjoint

  bool has_skills(const std::vector<std::string>& required) const {
    return std::includes(skills.begin(), skills.end(), required.begin(), required.end());
  }

  bool on_shift(SimTime t) const {
    for (const auto& s : shifts)
      if (s.start <= t && t < s.end) return true;
    return false;
  }

  Duration scheduled_ms(SimTime lo, SimTime hi) const {
    Duration total = 0;
    for (const auto& s : shifts) total += std::max<Duration>(0, std::min(s.end, hi) - std::max(s.start, lo));
    return total;
  }
};

struct SlaPolicy {
  Duration bound = 0;
  std::vector<std::int32_t> applies_to;
};

// --- job lifecycle ----------------------------------------------------------
//
//   created -> enqueued -> assigned -> decisioned -> closed
//   created -> decisioned                      (ML auto decision)
//   enqueued -> enqueued                       (transfer, skip)
//   decisioned -> enqueued | paused            (reopen loop, monitoring)
//   paused -> enqueued                         (reopen)
//
// `closed` is terminal and entered via close_job, not a trajectory event.

inline bool transition_allowed(JobState from, TrajKind kind) {
  switch (kind) {
    case TrajKind::enqueued: return from == JobState::created;
    case TrajKind::transferred: return from == JobState::enqueued;
    case TrajKind::skipped: return from == JobState::enqueued;
    case TrajKind::reviewed: return from == JobState::enqueued;
    case TrajKind::decisioned: return from == JobState::assigned || from == JobState::created;
    case TrajKind::reopened: return from == JobState::decisioned || from == JobState::paused;
    case TrajKind::paused: return from == JobState::decisioned;
  }
  return false;
}

inline JobState state_after(TrajKind kind) {
  switch (kind) {
    case TrajKind::enqueued:
    case TrajKind::transferred:
    case TrajKind::skipped:
    case TrajKind::reopened: return JobState::enqueued;
    case TrajKind::reviewed: return JobState::assigned;
    case TrajKind::decisioned: return JobState::decisioned;
    case TrajKind::paused: return JobState::paused;
  }
  return JobState::created;
}

inline void advance_state(Job& job, const TrajectoryEvent& ev) {
  if (!transition_allowed(job.state, ev.kind))
    throw StateError("job " + job.id + ": illegal transition " + to_string(job.state) + " -> " +
                     to_string(ev.kind));
  if (!job.trajectory_log.empty() && ev.t < job.trajectory_log.back().t)
    throw StateError("job " + job.id + ": trajectory time decreases");
  job.state = state_after(ev.kind);
  if (ev.kind != TrajKind::paused && ev.kind != TrajKind::decisioned && ev.queue >= 0)
    job.current_queue = ev.queue;
  job.trajectory_log.push_back(ev);
}

inline void close_job(Job& job) {
  if (job.state != JobState::decisioned)
    throw StateError("job " + job.id + ": cannot close from state " + to_string(job.state));
  job.state = JobState::closed;
}

// Elapsed time from first enqueue to final decision.
inline Duration turnaround_time(const Job& job) {
  if (job.state != JobState::decisioned && job.state != JobState::closed)
    throw StateError("job " + job.id + ": turnaround time requires a decisioned job");
  std::optional<SimTime> first_enqueue;
  std::optional<SimTime> last_decision;
  for (const auto& ev : job.trajectory_log) {
    if (ev.kind == TrajKind::enqueued && !first_enqueue) first_enqueue = ev.t;
    if (ev.kind == TrajKind::decisioned) last_decision = ev.t;
  }
  if (!first_enqueue || !last_decision)
    throw StateError("job " + job.id + ": no enqueue/decision on record");
  return *last_decision - *first_enqueue;
}

inline std::map<Severity, double> default_severity_weights() {
  return {{Severity::low, 1.0}, {Severity::medium, 2.0}, {Severity::high, 5.0}, {Severity::very_high, 10.0}};
}

}  // namespace revsim
