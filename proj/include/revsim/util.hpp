#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace revsim {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Maps a 64-bit value to [0,1). Stable across platforms and runs.
inline double hash_unit(std::uint64_t x) {
  return static_cast<double>(splitmix64(x) >> 11) * 0x1.0p-53;
}

// Dense string -> index mapping. Index order follows first-seen order.
class Interner {
 public:
  std::int32_t intern(std::string_view s) {
    auto it = lookup_.find(std::string(s));
    if (it != lookup_.end()) return it->second;
    auto idx = static_cast<std::int32_t>(names_.size());
    names_.emplace_back(s);
    lookup_.emplace(names_.back(), idx);
    return idx;
  }

  std::int32_t find(std::string_view s) const {
    auto it = lookup_.find(std::string(s));
    return it == lookup_.end() ? -1 : it->second;
  }

  const std::string& name(std::int32_t idx) const { return names_[static_cast<std::size_t>(idx)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::int32_t> lookup_;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace revsim
