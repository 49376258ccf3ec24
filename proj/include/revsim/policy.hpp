#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "revsim/domain.hpp"
#include "revsim/errors.hpp"
#include "revsim/time.hpp"

namespace revsim {

enum class FormulaVariant : std::uint8_t { fifo, smith, linear, escalation, virality };

enum class Feature : std::uint8_t {
  classifier_score,
  p_escalate,
  p1,
  p2,
  p3,
  predicted_views,
  wait_s,
};

inline std::optional<Feature> parse_feature(std::string_view s) {
  if (s == "classifier_score") return Feature::classifier_score;
  if (s == "p_escalate") return Feature::p_escalate;
  if (s == "p1") return Feature::p1;
  if (s == "p2") return Feature::p2;
  if (s == "p3") return Feature::p3;
  if (s == "predicted_views") return Feature::predicted_views;
  if (s == "wait_s") return Feature::wait_s;
  return std::nullopt;
}

struct PriorityFormula {
  FormulaVariant variant = FormulaVariant::fifo;
  std::map<Severity, double> smith_weights;          // smith
  double alpha = 0.0;                                // escalation
  std::array<double, 3> w{0.0, 0.0, 0.0};            // virality
  std::vector<std::pair<Feature, double>> coeffs;    // linear
};

// Queue definition. `open_jobs` ordering lives in RuntimeQueue.
struct QueueCfg {
  std::int32_t idx = -1;
  std::string id;
  std::int32_t segment = -1;
  std::vector<std::string> required_skills;  // sorted
  PriorityFormula formula;
  std::int64_t max_size = -1;          // -1 unbounded
  Duration reorder_period_ms = -1;     // -1: scores fixed at insertion
  Duration sla_window_ms = -1;         // -1: no SLA bound
  std::int32_t overflow_queue = -1;    // eviction target; -1 drops
};

struct Segment {
  std::int32_t idx = -1;
  std::string id;
  int rank = 0;
  std::vector<std::int32_t> queues;  // intra-segment stack rank order
};

namespace policy {

struct PriorityScore {
  double value = 0.0;
  SimTime computed_at = 0;
};

// What a prioritization formula may see. Ground truth (severity, label) is
// withheld; the bang-per-buck weight arrives as a precomputed scalar.
struct JobView {
  std::int32_t idx = -1;
  std::uint32_t sort_id = 0;
  SimTime enqueue_ms = 0;  // first enqueue; waiting age is measured from here
  Duration handle_ms = 1;
  double classifier_score = 0.0;
  double p_escalate = 0.0;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double smith_weight = 1.0;
  const ContentViewTrajectory* predicted = nullptr;

  std::int64_t predicted_views_at(SimTime t) const {
    return predicted ? content_views_at(*predicted, t) : 0;
  }
};

inline JobView make_view(const Job& job, const std::map<Severity, double>& severity_weights) {
  JobView v;
  v.idx = job.idx;
  v.sort_id = job.sort_id;
  v.enqueue_ms = job.enqueue_ms;
  v.handle_ms = job.handle_ms;
  v.classifier_score = job.classifier_score;
  v.p_escalate = job.p_escalate;
  v.p1 = job.topic_scores[0];
  v.p2 = job.topic_scores[1];
  v.p3 = job.topic_scores[2];
  if (job.weight) {
    v.smith_weight = *job.weight;
  } else {
    auto it = severity_weights.find(job.severity);
    v.smith_weight = it == severity_weights.end() ? 1.0 : it->second;
  }
  v.predicted = &job.predicted_views;
  return v;
}

inline PriorityScore score_fifo(const JobView& j, SimTime t) {
  return {-static_cast<double>(j.enqueue_ms), t};
}

inline PriorityScore score_smith(const JobView& j, SimTime t) {
  if (j.handle_ms <= 0) throw SimError("smith score requires positive handle time");
  return {j.smith_weight / to_seconds(j.handle_ms), t};
}

// commit(t) ramps linearly with waiting time and saturates at the SLA window.
inline PriorityScore score_escalation(const JobView& j, SimTime t, double alpha, Duration sla_window_ms) {
  if (sla_window_ms <= 0) throw ConfigError("escalation formula requires a positive SLA window");
  double commit = std::min(1.0, static_cast<double>(t - j.enqueue_ms) / static_cast<double>(sla_window_ms));
  if (commit < 0.0) commit = 0.0;
  return {j.p_escalate + alpha * commit, t};
}

inline PriorityScore score_virality(const JobView& j, SimTime t, const std::array<double, 3>& w) {
  double boost = 1.0;
  boost = std::max(boost, w[0] * j.p1);
  boost = std::max(boost, w[1] * j.p2);
  boost = std::max(boost, w[2] * j.p3);
  return {static_cast<double>(j.predicted_views_at(t)) * boost, t};
}

inline PriorityScore score_linear(const JobView& j, SimTime t,
                                  const std::vector<std::pair<Feature, double>>& coeffs) {
  double v = 0.0;
  for (const auto& [f, c] : coeffs) {
    switch (f) {
      case Feature::classifier_score: v += c * j.classifier_score; break;
      case Feature::p_escalate: v += c * j.p_escalate; break;
      case Feature::p1: v += c * j.p1; break;
      case Feature::p2: v += c * j.p2; break;
      case Feature::p3: v += c * j.p3; break;
      case Feature::predicted_views: v += c * static_cast<double>(j.predicted_views_at(t)); break;
      case Feature::wait_s: v += c * to_seconds(t - j.enqueue_ms); break;
    }
  }
  return {v, t};
}

inline PriorityScore score_job(const PriorityFormula& f, const JobView& j, SimTime t, Duration sla_window_ms) {
  switch (f.variant) {
    case FormulaVariant::fifo: return score_fifo(j, t);
    case FormulaVariant::smith: return score_smith(j, t);
    case FormulaVariant::escalation: return score_escalation(j, t, f.alpha, sla_window_ms);
    case FormulaVariant::virality: return score_virality(j, t, f.w);
    case FormulaVariant::linear: return score_linear(j, t, f.coeffs);
  }
  return {0.0, t};
}

// Prioritized open-job container. Scores are computed at insertion and at
// resort events only; between resorts the order is intentionally stale.
// Ties break by ascending job id.
class RuntimeQueue {
 public:
  struct Entry {
    double score;
    std::uint32_t sort_id;
    std::int32_t job;
  };
  struct Cmp {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.score != b.score) return a.score > b.score;
      return a.sort_id < b.sort_id;
    }
  };

  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }
  bool contains(std::int32_t job) const { return by_job_.count(job) > 0; }

  void insert(std::int32_t job, std::uint32_t sort_id, double score) {
    Entry e{score, sort_id, job};
    order_.insert(e);
    by_job_.emplace(job, e);
  }

  // Highest score, then lowest job id.
  std::optional<std::int32_t> dequeue_top() {
    if (order_.empty()) return std::nullopt;
    auto it = order_.begin();
    std::int32_t job = it->job;
    by_job_.erase(job);
    order_.erase(it);
    return job;
  }

  std::optional<std::int32_t> peek_top() const {
    if (order_.empty()) return std::nullopt;
    return order_.begin()->job;
  }

  // Lowest score, then highest job id (the eviction candidate).
  std::optional<std::int32_t> evict_lowest() {
    if (order_.empty()) return std::nullopt;
    auto it = std::prev(order_.end());
    std::int32_t job = it->job;
    by_job_.erase(job);
    order_.erase(it);
    return job;
  }

  bool remove(std::int32_t job) {
    auto it = by_job_.find(job);
    if (it == by_job_.end()) return false;
    order_.erase(it->second);
    by_job_.erase(it);
    return true;
  }

  template <typename ScoreFn>
  void resort(ScoreFn&& rescore) {
    std::vector<Entry> entries(order_.begin(), order_.end());
    order_.clear();
    for (auto& e : entries) {
      e.score = rescore(e.job);
      by_job_[e.job] = e;
      order_.insert(e);
    }
  }

  std::vector<std::int32_t> jobs_by_rank() const {
    std::vector<std::int32_t> out;
    out.reserve(order_.size());
    for (const auto& e : order_) out.push_back(e.job);
    return out;
  }

 private:
  std::set<Entry, Cmp> order_;
  std::unordered_map<std::int32_t, Entry> by_job_;
};

}  // namespace policy
}  // namespace revsim
