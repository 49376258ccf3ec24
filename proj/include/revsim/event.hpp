#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "revsim/errors.hpp"
#include "revsim/time.hpp"

namespace revsim {

enum class EventKind : std::uint8_t {
  job_arrival,
  reviewer_available,
  review_complete,
  shift_start,
  shift_end,
  queue_resort,
  reaper_scan,
  job_reopen,
  synthetic_injection,
};

// Tie-break order for events at equal time. Fixed so runs are deterministic;
// capacity changes (shift_end) become visible before assignment decisions.
inline int kind_rank(EventKind k) {
  switch (k) {
    case EventKind::shift_end: return 0;
    case EventKind::job_arrival: return 1;
    case EventKind::synthetic_injection: return 2;
    case EventKind::job_reopen: return 3;
    case EventKind::reaper_scan: return 4;
    case EventKind::queue_resort: return 5;
    case EventKind::shift_start: return 6;
    case EventKind::reviewer_available: return 7;
    case EventKind::review_complete: return 8;
  }
  return 9;
}

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::job_arrival: return "job_arrival";
    case EventKind::reviewer_available: return "reviewer_available";
    case EventKind::review_complete: return "review_complete";
    case EventKind::shift_start: return "shift_start";
    case EventKind::shift_end: return "shift_end";
    case EventKind::queue_resort: return "queue_resort";
    case EventKind::reaper_scan: return "reaper_scan";
    case EventKind::job_reopen: return "job_reopen";
    case EventKind::synthetic_injection: return "synthetic_injection";
  }
  return "?";
}

struct Event {
  SimTime t = 0;
  EventKind kind = EventKind::job_arrival;
  std::uint64_t seq = 0;
  std::int32_t job = -1;
  std::int32_t reviewer = -1;
  std::int32_t queue = -1;
  std::int32_t aux = -1;  // replay step index, criteria index, etc.
};

// Future event list keyed by (time, kind rank, scheduling order).
class EventCalendar {
 public:
  void schedule(SimTime clock, Event e) {
    if (e.t < clock) throw ClockError("event scheduled in the past");
    e.seq = next_seq_++;
    heap_.push(e);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.t != b.t) return a.t > b.t;
      int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
      if (ra != rb) return ra > rb;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace revsim
