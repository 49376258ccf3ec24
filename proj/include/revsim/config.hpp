#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsim/allocation.hpp"
#include "revsim/domain.hpp"
#include "revsim/errors.hpp"
#include "revsim/policy.hpp"
#include "revsim/reaper.hpp"
#include "revsim/util.hpp"

namespace revsim {

using json = nlohmann::json;

enum class Mode : std::uint8_t { replay, counterfactual };

inline const char* to_string(Mode m) { return m == Mode::replay ? "replay" : "counterfactual"; }

// Field sampling spec for synthetic workload generation.
struct Dist {
  enum class Kind : std::uint8_t { fixed, uniform, exponential, lognormal, choice, mixture, empirical } kind =
      Kind::fixed;
  double a = 0.0;  // fixed value | lo | mean | mu
  double b = 0.0;  // hi | sigma
  std::vector<std::pair<std::string, double>> choices;
  std::vector<std::pair<double, Dist>> parts;
  std::vector<double> empirical;  // loaded samples
  std::string file;

  bool is_zero() const { return kind == Kind::fixed && a == 0.0 && choices.empty(); }
};

struct ArrivalSpec {
  enum class Kind : std::uint8_t { poisson, uniform } kind = Kind::poisson;
  double rate_per_hour = 0.0;  // poisson
  Duration duration_ms = 0;    // uniform window; poisson cutoff when count == 0
};

struct ViewSpec {
  Dist rate_per_hour;        // cumulative views grow linearly at this rate
  Duration duration_ms = 0;  // content lifetime covered by samples
  int samples = 2;
  Dist pred_factor;          // predicted = actual * factor
};

struct SynthSpec {
  bool enabled = false;
  std::int64_t count = 0;
  SimTime start_ms = 0;
  ArrivalSpec arrival;
  Dist handle_ms;
  Dist queue;  // choice over queue ids
  Dist content_type, market, language, violation_type, severity, true_label, source;
  Dist classifier_score, p_escalate;
  std::array<Dist, 3> topic;
  ViewSpec views;
  std::optional<Dist> auto_decision_delay_ms;
  std::string id_prefix = "syn";
};

struct ScenarioConfig {
  std::string config_dir;
  Mode mode = Mode::counterfactual;
  std::uint64_t seed = 1;
  SimTime horizon_ms = 0;
  std::string jobs_path, shifts_path, skills_path;  // empty when absent
  SynthSpec synthetic;
  double demand_factor = 1.0;
  double supply_factor = 1.0;
  Duration pause_duration_ms = 30 * kMinute;
  std::map<Severity, double> severity_weights = default_severity_weights();
  double coverage_percentile = 0.9;
  double escalated_threshold = 0.5;
  std::map<std::string, std::string> reviewer_locations;
  std::vector<QueueCfg> queues;
  std::vector<Segment> segments;
  alloc::Strategy strategy;
  std::map<std::int32_t, std::int64_t> segment_daily_caps;
  std::vector<reaper::Criteria> reapers;
  Interner queue_names;
  Interner segment_names;

  std::int32_t queue_idx(std::string_view id) const { return queue_names.find(id); }
};

namespace cfgdetail {

inline bool expect(bool cond, std::vector<std::string>& diags, const std::string& msg) {
  if (!cond) diags.push_back(msg);
  return cond;
}

inline Dist parse_dist(const json& j, const std::string& where, std::vector<std::string>& diags);

inline Dist parse_dist_inner(const json& j, const std::string& where, std::vector<std::string>& diags) {
  Dist d;
  if (j.is_number()) {
    d.kind = Dist::Kind::fixed;
    d.a = j.get<double>();
    return d;
  }
  if (j.is_string()) {
    d.kind = Dist::Kind::choice;
    d.choices.emplace_back(j.get<std::string>(), 1.0);
    return d;
  }
  if (!j.is_object()) {
    diags.push_back(where + ": expected number, string or object");
    return d;
  }
  std::string kind = j.value("kind", "fixed");
  if (kind == "fixed") {
    d.kind = Dist::Kind::fixed;
    d.a = j.value("value", 0.0);
  } else if (kind == "uniform") {
    d.kind = Dist::Kind::uniform;
    d.a = j.value("lo", 0.0);
    d.b = j.value("hi", 1.0);
    expect(d.b >= d.a, diags, where + ": uniform hi < lo");
  } else if (kind == "exponential") {
    d.kind = Dist::Kind::exponential;
    d.a = j.value("mean", 1.0);
    expect(d.a > 0, diags, where + ": exponential mean must be positive");
  } else if (kind == "lognormal") {
    d.kind = Dist::Kind::lognormal;
    d.a = j.value("mu", 0.0);
    d.b = j.value("sigma", 1.0);
    expect(d.b >= 0, diags, where + ": lognormal sigma must be non-negative");
  } else if (kind == "choice") {
    d.kind = Dist::Kind::choice;
    if (j.contains("options") && j["options"].is_object()) {
      double total = 0.0;
      for (auto& [k, v] : j["options"].items()) {
        double w = v.get<double>();
        expect(w >= 0, diags, where + ": negative choice weight for " + k);
        d.choices.emplace_back(k, w);
        total += w;
      }
      expect(total > 0, diags, where + ": choice weights sum to zero");
    } else {
      diags.push_back(where + ": choice requires an options object");
    }
  } else if (kind == "mixture") {
    d.kind = Dist::Kind::mixture;
    if (j.contains("parts") && j["parts"].is_array()) {
      for (const auto& p : j["parts"]) {
        double w = p.value("weight", 1.0);
        d.parts.emplace_back(w, parse_dist(p, where + ".parts", diags));
      }
    } else {
      diags.push_back(where + ": mixture requires a parts array");
    }
  } else if (kind == "empirical") {
    d.kind = Dist::Kind::empirical;
    d.file = j.value("file", "");
    expect(!d.file.empty(), diags, where + ": empirical requires a file");
  } else {
    diags.push_back(where + ": unknown distribution kind '" + kind + "'");
  }
  return d;
}

inline Dist parse_dist(const json& j, const std::string& where, std::vector<std::string>& diags) {
  return parse_dist_inner(j, where, diags);
}

inline PriorityFormula parse_formula(const json& j, const std::string& where,
                                     const std::map<Severity, double>& default_weights,
                                     std::vector<std::string>& diags) {
  PriorityFormula f;
  if (!j.is_object()) {
    diags.push_back(where + ": formula must be an object");
    return f;
  }
  std::string variant = j.value("variant", "fifo");
  if (variant == "fifo") {
    f.variant = FormulaVariant::fifo;
  } else if (variant == "smith") {
    f.variant = FormulaVariant::smith;
    f.smith_weights = default_weights;
    if (j.contains("weights")) {
      for (auto& [k, v] : j["weights"].items()) {
        auto sev = parse_enum<Severity>(k);
        if (!sev) {
          diags.push_back(where + ": unknown severity '" + k + "'");
          continue;
        }
        f.smith_weights[*sev] = v.get<double>();
      }
    }
  } else if (variant == "escalation") {
    f.variant = FormulaVariant::escalation;
    f.alpha = j.value("alpha", 0.0);
    expect(f.alpha >= 0, diags, where + ": alpha must be non-negative");
  } else if (variant == "virality") {
    f.variant = FormulaVariant::virality;
    if (j.contains("W")) {
      double W = j["W"].get<double>();
      f.w = {W, W, W};
    } else if (j.contains("w")) {
      const auto& arr = j["w"];
      if (arr.is_array() && arr.size() == 3) {
        for (int i = 0; i < 3; ++i) f.w[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(i)].get<double>();
      } else {
        diags.push_back(where + ": virality w must be a 3-element array");
      }
    }
    for (double w : f.w) expect(w >= 0, diags, where + ": virality weights must be non-negative");
  } else if (variant == "linear") {
    f.variant = FormulaVariant::linear;
    if (j.contains("coeffs") && j["coeffs"].is_object()) {
      for (auto& [k, v] : j["coeffs"].items()) {
        auto feat = parse_feature(k);
        if (!feat) {
          diags.push_back(where + ": unknown feature '" + k + "'");
          continue;
        }
        f.coeffs.emplace_back(*feat, v.get<double>());
      }
    } else {
      diags.push_back(where + ": linear formula requires coeffs");
    }
  } else {
    diags.push_back(where + ": unknown formula variant '" + variant + "'");
  }
  return f;
}

}  // namespace cfgdetail

// Structural + referential parse. Problems are reported through `diags`;
// the returned config is usable only when no diagnostics were added.
inline ScenarioConfig parse_scenario(const json& j, const std::string& config_dir,
                                     std::vector<std::string>& diags) {
  using cfgdetail::expect;
  ScenarioConfig c;
  c.config_dir = config_dir;

  if (!j.is_object()) {
    diags.push_back("config: root must be an object");
    return c;
  }

  std::string mode = j.value("mode", "counterfactual");
  if (mode == "replay") c.mode = Mode::replay;
  else if (mode == "counterfactual") c.mode = Mode::counterfactual;
  else diags.push_back("config.mode: must be replay or counterfactual");

  c.seed = j.value("seed", 1ull);
  c.horizon_ms = j.value("horizon_ms", static_cast<SimTime>(0));
  expect(c.horizon_ms > 0, diags, "config.horizon_ms: must be positive");

  if (j.contains("traces")) {
    const auto& t = j["traces"];
    c.jobs_path = t.value("jobs", "");
    c.shifts_path = t.value("shifts", "");
    c.skills_path = t.value("skills", "");
  }
  c.demand_factor = j.value("demand_factor", 1.0);
  c.supply_factor = j.value("supply_factor", 1.0);
  expect(c.demand_factor > 0, diags, "config.demand_factor: must be positive");
  expect(c.supply_factor > 0, diags, "config.supply_factor: must be positive");
  c.pause_duration_ms = j.value("pause_duration_ms", static_cast<Duration>(30 * kMinute));
  expect(c.pause_duration_ms > 0, diags, "config.pause_duration_ms: must be positive");
  c.coverage_percentile = j.value("coverage_percentile", 0.9);
  expect(c.coverage_percentile > 0 && c.coverage_percentile < 1, diags,
         "config.coverage_percentile: must be in (0,1)");
  c.escalated_threshold = j.value("escalated_threshold", 0.5);

  if (j.contains("severity_weights")) {
    for (auto& [k, v] : j["severity_weights"].items()) {
      auto sev = parse_enum<Severity>(k);
      if (!sev) {
        diags.push_back("config.severity_weights: unknown severity '" + k + "'");
        continue;
      }
      c.severity_weights[*sev] = v.get<double>();
    }
  }
  if (j.contains("reviewer_locations")) {
    for (auto& [k, v] : j["reviewer_locations"].items()) c.reviewer_locations[k] = v.get<std::string>();
  }

  // Queues first (ids), then segments referencing them.
  if (!j.contains("queues") || !j["queues"].is_array() || j["queues"].empty()) {
    diags.push_back("config.queues: at least one queue is required");
    return c;
  }
  for (const auto& qj : j["queues"]) {
    QueueCfg q;
    q.id = qj.value("id", "");
    if (q.id.empty()) {
      diags.push_back("config.queues: queue without id");
      continue;
    }
    if (c.queue_names.find(q.id) >= 0) {
      diags.push_back("config.queues: duplicate queue id '" + q.id + "'");
      continue;
    }
    q.idx = c.queue_names.intern(q.id);
    if (qj.contains("required_skills"))
      for (const auto& s : qj["required_skills"]) q.required_skills.push_back(s.get<std::string>());
    std::sort(q.required_skills.begin(), q.required_skills.end());
    q.formula = cfgdetail::parse_formula(qj.value("formula", json{{"variant", "fifo"}}),
                                         "config.queues." + q.id + ".formula", c.severity_weights, diags);
    q.max_size = qj.value("max_size", static_cast<std::int64_t>(-1));
    expect(q.max_size == -1 || q.max_size > 0, diags, "config.queues." + q.id + ".max_size: must be positive");
    q.reorder_period_ms = qj.value("reorder_period_ms", static_cast<Duration>(-1));
    expect(q.reorder_period_ms == -1 || q.reorder_period_ms > 0, diags,
           "config.queues." + q.id + ".reorder_period_ms: must be positive");
    q.sla_window_ms = qj.value("sla_window_ms", static_cast<Duration>(-1));
    expect(q.sla_window_ms == -1 || q.sla_window_ms > 0, diags,
           "config.queues." + q.id + ".sla_window_ms: must be positive");
    if (q.formula.variant == FormulaVariant::escalation)
      expect(q.sla_window_ms > 0, diags,
             "config.queues." + q.id + ": escalation formula requires sla_window_ms");
    c.queues.push_back(std::move(q));
  }
  // Second pass: overflow queue references.
  for (const auto& qj : j["queues"]) {
    std::string id = qj.value("id", "");
    std::string ov = qj.value("overflow_queue", "");
    if (id.empty() || ov.empty()) continue;
    std::int32_t qi = c.queue_names.find(id);
    if (qi < 0) continue;
    auto& q = c.queues[static_cast<std::size_t>(qi)];
    q.overflow_queue = c.queue_names.find(ov);
    expect(q.overflow_queue >= 0, diags,
           "config.queues." + q.id + ".overflow_queue: unknown queue '" + ov + "'");
    expect(q.overflow_queue != q.idx, diags,
           "config.queues." + q.id + ".overflow_queue: queue overflows into itself");
  }

  std::set<std::int32_t> assigned_queues;
  if (j.contains("segments") && j["segments"].is_array()) {
    for (const auto& sj : j["segments"]) {
      Segment s;
      s.id = sj.value("id", "");
      if (s.id.empty()) {
        diags.push_back("config.segments: segment without id");
        continue;
      }
      if (c.segment_names.find(s.id) >= 0) {
        diags.push_back("config.segments: duplicate segment id '" + s.id + "'");
        continue;
      }
      s.idx = c.segment_names.intern(s.id);
      s.rank = sj.value("rank", 0);
      if (sj.contains("queues"))
        for (const auto& qid : sj["queues"]) {
          std::int32_t q = c.queue_names.find(qid.get<std::string>());
          if (!expect(q >= 0, diags,
                      "config.segments." + s.id + ": unknown queue '" + qid.get<std::string>() + "'"))
            continue;
          if (!expect(assigned_queues.insert(q).second, diags,
                      "config.segments." + s.id + ": queue '" + qid.get<std::string>() +
                          "' already belongs to a segment"))
            continue;
          s.queues.push_back(q);
        }
      c.segments.push_back(std::move(s));
    }
  }
  // Queues outside any segment fall into an implicit default segment, ranked last.
  {
    std::vector<std::int32_t> rest;
    for (const auto& q : c.queues)
      if (assigned_queues.count(q.idx) == 0) rest.push_back(q.idx);
    if (!rest.empty()) {
      Segment s;
      s.id = "_default";
      s.idx = c.segment_names.intern(s.id);
      int max_rank = 0;
      for (const auto& seg : c.segments) max_rank = std::max(max_rank, seg.rank);
      s.rank = max_rank + 1;
      s.queues = rest;
      c.segments.push_back(std::move(s));
    }
  }
  for (const auto& s : c.segments)
    for (std::int32_t q : s.queues) c.queues[static_cast<std::size_t>(q)].segment = s.idx;

  // Allocation strategy.
  if (j.contains("strategy")) {
    const auto& sj = j["strategy"];
    std::string variant = sj.value("variant", "stack_rank");
    if (variant == "stack_rank") {
      c.strategy.variant = alloc::StrategyVariant::stack_rank;
    } else if (variant == "percentage") {
      c.strategy.variant = alloc::StrategyVariant::percentage;
      std::set<std::int32_t> seen;
      double total_weight = 0.0;
      if (sj.contains("groups") && sj["groups"].is_array()) {
        for (const auto& gj : sj["groups"]) {
          alloc::StrategyGroup g;
          g.name = gj.value("name", "group" + std::to_string(c.strategy.groups.size()));
          g.weight = gj.value("weight", 0.0);
          expect(g.weight >= 0, diags, "config.strategy." + g.name + ": negative weight");
          total_weight += g.weight;
          if (gj.contains("segments"))
            for (const auto& sid : gj["segments"]) {
              std::int32_t seg = c.segment_names.find(sid.get<std::string>());
              if (!expect(seg >= 0, diags,
                          "config.strategy." + g.name + ": unknown segment '" + sid.get<std::string>() + "'"))
                continue;
              for (const auto& s : c.segments)
                if (s.idx == seg)
                  for (std::int32_t q : s.queues) g.queues.push_back(q);
            }
          if (gj.contains("queues"))
            for (const auto& qid : gj["queues"]) {
              std::int32_t q = c.queue_names.find(qid.get<std::string>());
              if (!expect(q >= 0, diags,
                          "config.strategy." + g.name + ": unknown queue '" + qid.get<std::string>() + "'"))
                continue;
              g.queues.push_back(q);
            }
          for (std::int32_t q : g.queues)
            expect(seen.insert(q).second, diags,
                   "config.strategy." + g.name + ": queue '" + c.queue_names.name(q) +
                       "' appears in more than one group");
          c.strategy.groups.push_back(std::move(g));
        }
      }
      expect(!c.strategy.groups.empty(), diags, "config.strategy: percentage requires groups");
      expect(total_weight > 0, diags, "config.strategy: group weights must sum to a positive value");
      if (sj.contains("daily_weights")) {
        for (const auto& row : sj["daily_weights"]) {
          std::vector<double> weights;
          for (const auto& w : row) weights.push_back(w.get<double>());
          expect(weights.size() == c.strategy.groups.size(), diags,
                 "config.strategy.daily_weights: row size must match group count");
          c.strategy.daily_weights.push_back(std::move(weights));
        }
      }
    } else {
      diags.push_back("config.strategy: unknown variant '" + variant + "'");
    }
  }

  if (j.contains("segment_daily_caps")) {
    for (auto& [k, v] : j["segment_daily_caps"].items()) {
      std::int32_t seg = c.segment_names.find(k);
      if (!expect(seg >= 0, diags, "config.segment_daily_caps: unknown segment '" + k + "'")) continue;
      std::int64_t cap = v.get<std::int64_t>();
      expect(cap > 0, diags, "config.segment_daily_caps: cap must be positive for '" + k + "'");
      c.segment_daily_caps[seg] = cap;
    }
  }

  if (j.contains("reaper") && j["reaper"].is_array()) {
    std::size_t i = 0;
    for (const auto& rj : j["reaper"]) {
      std::string where = "config.reaper[" + std::to_string(i++) + "]";
      reaper::Criteria r;
      r.scan_period_ms = rj.value("scan_period_ms", static_cast<Duration>(0));
      expect(r.scan_period_ms > 0, diags, where + ".scan_period_ms: must be positive");
      if (rj.contains("content_types"))
        for (const auto& ct : rj["content_types"]) {
          auto parsed = parse_enum<ContentType>(ct.get<std::string>());
          if (expect(parsed.has_value(), diags,
                     where + ": unknown content type '" + ct.get<std::string>() + "'"))
            r.content_types.insert(*parsed);
        }
      r.min_views = rj.value("min_views", static_cast<std::int64_t>(0));
      expect(r.min_views >= 0, diags, where + ".min_views: must be non-negative");
      r.score_threshold = rj.value("score_threshold", 0.0);
      expect(r.score_threshold >= 0 && r.score_threshold <= 1, diags,
             where + ".score_threshold: must be in [0,1]");
      r.sample_fraction = rj.value("sample_fraction", 0.0);
      expect(r.sample_fraction >= 0 && r.sample_fraction <= 1, diags,
             where + ".sample_fraction: must be in [0,1]");
      r.target_queue_id = rj.value("target_queue", "");
      r.target_queue = c.queue_names.find(r.target_queue_id);
      expect(r.target_queue >= 0, diags,
             where + ".target_queue: unknown queue '" + r.target_queue_id + "'");
      c.reapers.push_back(std::move(r));
    }
  }

  // Synthetic workload.
  if (j.contains("synthetic")) {
    const auto& sj = j["synthetic"];
    auto& s = c.synthetic;
    s.enabled = true;
    s.count = sj.value("count", static_cast<std::int64_t>(0));
    s.start_ms = sj.value("start_ms", static_cast<SimTime>(0));
    s.id_prefix = sj.value("id_prefix", "syn");
    if (sj.contains("arrival")) {
      const auto& aj = sj["arrival"];
      std::string kind = aj.value("kind", "poisson");
      if (kind == "poisson") {
        s.arrival.kind = ArrivalSpec::Kind::poisson;
        s.arrival.rate_per_hour = aj.value("rate_per_hour", 0.0);
        expect(s.arrival.rate_per_hour > 0, diags, "config.synthetic.arrival: rate_per_hour must be positive");
      } else if (kind == "uniform") {
        s.arrival.kind = ArrivalSpec::Kind::uniform;
      } else {
        diags.push_back("config.synthetic.arrival: unknown kind '" + kind + "'");
      }
      s.arrival.duration_ms = aj.value("duration_ms", static_cast<Duration>(0));
    }
    expect(s.count > 0 || s.arrival.duration_ms > 0, diags,
           "config.synthetic: either count or arrival.duration_ms is required");
    if (s.arrival.kind == ArrivalSpec::Kind::uniform)
      expect(s.arrival.duration_ms > 0, diags, "config.synthetic.arrival: uniform requires duration_ms");
    auto dist_of = [&](const char* key, Dist fallback) {
      if (!sj.contains(key)) return fallback;
      return cfgdetail::parse_dist(sj[key], std::string("config.synthetic.") + key, diags);
    };
    Dist one;
    one.a = 1.0;
    s.handle_ms = dist_of("handle_ms", one);
    s.queue = dist_of("queue", Dist{});
    expect(s.queue.kind == Dist::Kind::choice && !s.queue.choices.empty(), diags,
           "config.synthetic.queue: required (queue id or choice)");
    for (const auto& [qid, w] : s.queue.choices) {
      (void)w;
      expect(c.queue_names.find(qid) >= 0, diags, "config.synthetic.queue: unknown queue '" + qid + "'");
    }
    Dist text;
    text.kind = Dist::Kind::choice;
    text.choices.emplace_back("text", 1.0);
    s.content_type = dist_of("content_type", text);
    Dist def_tok;
    def_tok.kind = Dist::Kind::choice;
    def_tok.choices.emplace_back("default", 1.0);
    s.market = dist_of("market", def_tok);
    s.language = dist_of("language", def_tok);
    s.violation_type = dist_of("violation_type", def_tok);
    Dist sev_low;
    sev_low.kind = Dist::Kind::choice;
    sev_low.choices.emplace_back("low", 1.0);
    s.severity = dist_of("severity", sev_low);
    Dist benign;
    benign.kind = Dist::Kind::choice;
    benign.choices.emplace_back("benign", 1.0);
    s.true_label = dist_of("true_label", benign);
    Dist src;
    src.kind = Dist::Kind::choice;
    src.choices.emplace_back("user_report", 1.0);
    s.source = dist_of("source", src);
    s.classifier_score = dist_of("classifier_score", Dist{});
    s.p_escalate = dist_of("p_escalate", Dist{});
    if (sj.contains("topic") && sj["topic"].is_array() && sj["topic"].size() == 3) {
      for (std::size_t i = 0; i < 3; ++i)
        s.topic[i] = cfgdetail::parse_dist(sj["topic"][i], "config.synthetic.topic", diags);
    }
    if (sj.contains("views")) {
      const auto& vj = sj["views"];
      s.views.rate_per_hour = vj.contains("rate_per_hour")
                                  ? cfgdetail::parse_dist(vj["rate_per_hour"], "config.synthetic.views", diags)
                                  : Dist{};
      s.views.duration_ms = vj.value("duration_ms", static_cast<Duration>(kDay));
      s.views.samples = vj.value("samples", 2);
      expect(s.views.samples >= 1, diags, "config.synthetic.views.samples: must be >= 1");
      Dist exact;
      exact.a = 1.0;
      s.views.pred_factor = vj.contains("pred_factor")
                                ? cfgdetail::parse_dist(vj["pred_factor"], "config.synthetic.views", diags)
                                : exact;
    }
    if (sj.contains("auto_decision_delay_ms"))
      s.auto_decision_delay_ms =
          cfgdetail::parse_dist(sj["auto_decision_delay_ms"], "config.synthetic.auto_decision_delay_ms", diags);
  }

  if (c.jobs_path.empty() && !c.synthetic.enabled)
    diags.push_back("config: either traces.jobs or synthetic is required");
  if (c.mode == Mode::replay && c.jobs_path.empty())
    diags.push_back("config: replay mode requires traces.jobs");

  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return j;
}

// Loads and parses; throws ConfigError listing every diagnostic.
inline ScenarioConfig load_config(const std::string& path) {
  json j = read_json_file(path);
  std::vector<std::string> diags;
  auto dir = std::filesystem::path(path).parent_path().string();
  ScenarioConfig c = parse_scenario(j, dir, diags);
  if (!diags.empty()) {
    std::string msg = path + ": invalid scenario";
    for (const auto& d : diags) msg += "\n  " + d;
    throw ConfigError(msg);
  }
  return c;
}

inline std::string resolve_path(const ScenarioConfig& c, const std::string& rel) {
  if (rel.empty()) return rel;
  std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(c.config_dir) / p).string();
}

}  // namespace revsim
