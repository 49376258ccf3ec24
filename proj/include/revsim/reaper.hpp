#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "revsim/domain.hpp"
#include "revsim/time.hpp"
#include "revsim/util.hpp"

namespace revsim {
namespace reaper {

// One validation rule: periodically sample auto-decisioned proactive content
// back into a human queue when the classifier was not confident.
struct Criteria {
  Duration scan_period_ms = 0;
  std::set<ContentType> content_types;
  std::int64_t min_views = 0;
  double score_threshold = 0.0;
  double sample_fraction = 0.0;
  std::int32_t target_queue = -1;
  std::string target_queue_id;
};

// The sampling draw is keyed by (candidate id, seed), not by the run stream,
// so raising sample_fraction strictly grows the selected set.
inline bool sampled(std::string_view candidate_id, std::uint64_t seed, double fraction) {
  return hash_unit(fnv1a64(candidate_id) ^ seed) < fraction;
}

inline bool should_enqueue(const Job& candidate, SimTime t, const Criteria& c, std::uint64_t seed) {
  if (!c.content_types.empty() && c.content_types.count(candidate.content_type) == 0) return false;
  if (content_views_at(candidate.views, t) < c.min_views) return false;
  if (!(candidate.classifier_score < c.score_threshold)) return false;
  return sampled(candidate.id, seed, c.sample_fraction);
}

}  // namespace reaper
}  // namespace revsim
