#pragma once

#include <stdexcept>
#include <string>

namespace revsim {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Illegal job lifecycle transition.
struct StateError : SimError {
  using SimError::SimError;
};

// Scheduling an event before the current clock.
struct ClockError : SimError {
  using SimError::SimError;
};

// Bad scenario configuration or malformed input records.
struct ConfigError : SimError {
  using SimError::SimError;
};

}  // namespace revsim
