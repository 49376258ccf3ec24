#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "revsim/errors.hpp"
#include "revsim/time.hpp"
#include "revsim/util.hpp"

namespace revsim {

// One line per record in the emitted log. Kinds that add a job to a queue:
// enqueue, inject, reopen, transfer (into `queue`), reaper_enqueue. Kinds that
// remove one: assign, drop, transfer (out of `from`).
enum class LogKind : std::uint8_t {
  enqueue,
  inject,
  assign,
  decision,
  close,
  pause,
  reopen,
  transfer,
  skip,
  drop,
  shift_start,
  shift_end,
  resort,
  reaper_scan,
  reaper_enqueue,
};

inline const char* to_string(LogKind k) {
  switch (k) {
    case LogKind::enqueue: return "enqueue";
    case LogKind::inject: return "inject";
    case LogKind::assign: return "assign";
    case LogKind::decision: return "decision";
    case LogKind::close: return "close";
    case LogKind::pause: return "pause";
    case LogKind::reopen: return "reopen";
    case LogKind::transfer: return "transfer";
    case LogKind::skip: return "skip";
    case LogKind::drop: return "drop";
    case LogKind::shift_start: return "shift_start";
    case LogKind::shift_end: return "shift_end";
    case LogKind::resort: return "resort";
    case LogKind::reaper_scan: return "reaper_scan";
    case LogKind::reaper_enqueue: return "reaper_enqueue";
  }
  return "?";
}

struct LogRecord {
  SimTime t = 0;
  std::uint64_t seq = 0;
  LogKind kind = LogKind::enqueue;
  std::int32_t job = -1;
  std::int32_t reviewer = -1;
  std::int32_t queue = -1;
  std::int32_t from_queue = -1;
  std::int64_t aux = 0;   // decision: action bits; reaper_scan: scanned count
  std::int64_t aux2 = 0;  // reaper_scan: selected count; reaper_enqueue: candidate idx
};

// Decision aux bits.
inline constexpr std::int64_t kActionRemove = 1;
inline constexpr std::int64_t kDecisionAuto = 2;

class EventLog {
 public:
  void append(const LogRecord& r) {
    if (!records_.empty() && r.t < records_.back().t)
      throw SimError("event log time went backwards");
    records_.push_back(r);
  }

  const std::vector<LogRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  void reserve(std::size_t n) { records_.reserve(n); }

 private:
  std::vector<LogRecord> records_;
};

namespace detail {
inline void append_int(std::string& out, std::int64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}
}  // namespace detail

// Name lookups used when serializing a log; indices map back to input ids.
struct LogNames {
  const Interner* jobs = nullptr;
  const Interner* reviewers = nullptr;
  const Interner* queues = nullptr;
};

inline void format_record(std::string& out, const LogRecord& r, const LogNames& names) {
  out += "{\"t\":";
  detail::append_int(out, r.t);
  out += ",\"seq\":";
  detail::append_int(out, static_cast<std::int64_t>(r.seq));
  out += ",\"kind\":\"";
  out += to_string(r.kind);
  out += '"';
  if (r.job >= 0 && names.jobs) {
    out += ",\"job\":\"";
    out += names.jobs->name(r.job);
    out += '"';
  }
  if (r.reviewer >= 0 && names.reviewers) {
    out += ",\"reviewer\":\"";
    out += names.reviewers->name(r.reviewer);
    out += '"';
  }
  if (r.queue >= 0 && names.queues) {
    out += ",\"queue\":\"";
    out += names.queues->name(r.queue);
    out += '"';
  }
  if (r.from_queue >= 0 && names.queues) {
    out += ",\"from\":\"";
    out += names.queues->name(r.from_queue);
    out += '"';
  }
  switch (r.kind) {
    case LogKind::decision:
      out += ",\"detail\":\"action=";
      out += (r.aux & kActionRemove) ? "remove" : "keep";
      out += (r.aux & kDecisionAuto) ? ",auto=1" : ",auto=0";
      out += '"';
      break;
    case LogKind::reaper_scan:
      out += ",\"detail\":\"scanned=";
      detail::append_int(out, r.aux);
      out += ",selected=";
      detail::append_int(out, r.aux2);
      out += '"';
      break;
    case LogKind::reaper_enqueue:
      if (names.jobs && r.aux2 >= 0) {
        out += ",\"detail\":\"candidate=";
        out += names.jobs->name(static_cast<std::int32_t>(r.aux2));
        out += '"';
      }
      break;
    case LogKind::resort:
      out += ",\"detail\":\"jobs=";
      detail::append_int(out, r.aux);
      out += '"';
      break;
    default: break;
  }
  out += "}\n";
}

inline void write_ndjson(const EventLog& log, const std::string& path, const LogNames& names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open log output: " + path);
  std::string buf;
  buf.reserve(1 << 20);
  for (const auto& r : log.records()) {
    format_record(buf, r, names);
    if (buf.size() > (1 << 20) - 512) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace revsim
