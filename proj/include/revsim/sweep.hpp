#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "revsim/config.hpp"
#include "revsim/errors.hpp"
#include "revsim/util.hpp"

namespace revsim {
namespace sweep {

// Resolves a dotted parameter path inside a scenario config. Array elements
// match by zero-based index or by their "id" field, e.g.
// "queues.q_esc.formula.alpha" or "reaper.0.sample_fraction".
inline json* resolve_path(json& root, const std::string& path) {
  json* cur = &root;
  for (auto token_view : split(path, '.')) {
    std::string token(token_view);
    if (token.empty()) return nullptr;
    if (cur->is_object()) {
      if (!cur->contains(token)) return nullptr;
      cur = &(*cur)[token];
      continue;
    }
    if (cur->is_array()) {
      bool digits = std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (digits) {
        auto idx = static_cast<std::size_t>(std::stoull(token));
        if (idx >= cur->size()) return nullptr;
        cur = &(*cur)[idx];
        continue;
      }
      json* found = nullptr;
      for (auto& el : *cur)
        if (el.is_object() && el.value("id", "") == token) {
          found = &el;
          break;
        }
      if (!found) return nullptr;
      cur = found;
      continue;
    }
    return nullptr;
  }
  return cur;
}

inline void patch(json& root, const std::string& path, const json& value) {
  json* target = resolve_path(root, path);
  if (!target) throw ConfigError("sweep parameter path not resolvable: " + path);
  *target = value;
}

struct Point {
  double value = 0.0;
  std::uint64_t seed = 0;
};

// Expands (values x seeds) sorted by (value, seed); the output table order is
// independent of how the value list was given.
inline std::vector<Point> make_points(std::vector<double> values, std::vector<std::uint64_t> seeds) {
  if (values.empty()) throw ConfigError("sweep requires at least one value");
  if (seeds.empty()) seeds.push_back(1);
  std::sort(values.begin(), values.end());
  std::sort(seeds.begin(), seeds.end());
  std::vector<Point> out;
  for (double v : values)
    for (auto s : seeds) out.push_back({v, s});
  return out;
}

// Runs `fn(point_index)` over a fixed-size pool. Results must be written to
// pre-sized slots; the pool adds no ordering of its own.
template <typename Fn>
void for_each_point(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  auto count = static_cast<std::size_t>(jobs);
  for (std::size_t i = 0; i < std::min(count, n); ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace sweep
}  // namespace revsim
