#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "revsim/domain.hpp"
#include "revsim/policy.hpp"
#include "revsim/rng.hpp"

namespace revsim {
namespace alloc {

enum class StrategyVariant : std::uint8_t { stack_rank, percentage };

struct StrategyGroup {
  std::string name;
  std::vector<std::int32_t> queues;  // member queue indices
  double weight = 0.0;
};

struct Strategy {
  StrategyVariant variant = StrategyVariant::stack_rank;
  std::vector<StrategyGroup> groups;
  // Optional per-day weight override; row d applies to sim day d, last row
  // repeats afterwards. Columns follow `groups`.
  std::vector<std::vector<double>> daily_weights;

  std::span<const double> weights_for_day(std::int64_t day, std::vector<double>& scratch) const {
    if (daily_weights.empty()) {
      scratch.clear();
      for (const auto& g : groups) scratch.push_back(g.weight);
      return scratch;
    }
    auto row = static_cast<std::size_t>(std::min<std::int64_t>(day, static_cast<std::int64_t>(daily_weights.size()) - 1));
    if (day < 0) row = 0;
    return daily_weights[row];
  }
};

// reviewer r may serve queue q iff q.required_skills is a subset of r.skills
class EligibilityMatrix {
 public:
  void build(const std::vector<Reviewer>& reviewers, const std::vector<QueueCfg>& queues) {
    nq_ = queues.size();
    bits_.assign(reviewers.size() * nq_, 0);
    for (const auto& r : reviewers)
      for (const auto& q : queues)
        if (r.has_skills(q.required_skills)) bits_[r.idx * nq_ + q.idx] = 1;
  }

  bool eligible(std::int32_t reviewer, std::int32_t queue) const {
    return bits_[static_cast<std::size_t>(reviewer) * nq_ + static_cast<std::size_t>(queue)] != 0;
  }

 private:
  std::size_t nq_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Queues the reviewer may serve, ordered by (segment rank, intra-segment rank).
inline std::vector<std::int32_t> eligible_queues(const Reviewer& reviewer,
                                                 const std::vector<QueueCfg>& queues,
                                                 const std::vector<Segment>& segments) {
  std::vector<const Segment*> ordered;
  ordered.reserve(segments.size());
  for (const auto& s : segments) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(), [](const Segment* a, const Segment* b) {
    if (a->rank != b->rank) return a->rank < b->rank;
    return a->idx < b->idx;
  });
  std::vector<std::int32_t> out;
  for (const Segment* s : ordered)
    for (std::int32_t q : s->queues)
      if (reviewer.has_skills(queues[q].required_skills)) out.push_back(q);
  return out;
}

// First non-empty queue in stack-rank order.
template <typename EmptyFn>
std::int32_t pick_stack_rank(std::span<const std::int32_t> eligible_order, EmptyFn&& is_empty) {
  for (std::int32_t q : eligible_order)
    if (!is_empty(q)) return q;
  return -1;
}

// Groups holding at least one non-empty eligible queue compete; one is drawn
// with probability proportional to weight (renormalized over candidates).
// Inside the chosen group selection falls back to stack rank. Exactly one
// random draw is consumed when two or more groups compete, none otherwise.
template <typename EmptyFn>
std::int32_t pick_percentage(const Strategy& strategy, std::span<const std::int32_t> eligible_order,
                             EmptyFn&& is_empty, std::int64_t day, RunRng& rng,
                             std::uint64_t* multi_group_draws = nullptr) {
  std::vector<double> scratch;
  auto weights = strategy.weights_for_day(day, scratch);

  // Per group, the first non-empty eligible queue in global rank order.
  std::vector<std::int32_t> first_nonempty(strategy.groups.size(), -1);
  std::vector<std::size_t> candidates;
  for (std::size_t g = 0; g < strategy.groups.size(); ++g) {
    const auto& members = strategy.groups[g].queues;
    for (std::int32_t q : eligible_order) {
      if (std::find(members.begin(), members.end(), q) == members.end()) continue;
      if (!is_empty(q)) {
        first_nonempty[g] = q;
        break;
      }
    }
    if (first_nonempty[g] >= 0) candidates.push_back(g);
  }

  if (candidates.empty()) return -1;
  if (candidates.size() == 1) return first_nonempty[candidates[0]];

  double total = 0.0;
  std::vector<double> cand_weights;
  cand_weights.reserve(candidates.size());
  for (std::size_t g : candidates) {
    double w = g < weights.size() ? weights[g] : 0.0;
    cand_weights.push_back(w);
    total += w;
  }
  if (total <= 0.0) return first_nonempty[candidates[0]];

  if (multi_group_draws) ++*multi_group_draws;
  std::size_t pick = rng.pick_weighted(cand_weights, total);
  return first_nonempty[candidates[pick]];
}

}  // namespace alloc
}  // namespace revsim
