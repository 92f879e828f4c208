#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dirac {

/// Thrown when a vector potential is evaluated inside its excluded region
/// (near the Dirac string of the monopole). Trajectory walkers attach the
/// offending node index before propagating.
class singular_region_error : public std::runtime_error {
 public:
  explicit singular_region_error(std::string msg, std::int64_t node = -1)
      : std::runtime_error(std::move(msg)), node_index(node) {}

  std::int64_t node_index;  // -1 when not tied to a trajectory node
};

/// Raised by run_experiment when the fraction of rejected (string-crossing)
/// samples exceeds the abort threshold.
class run_aborted_error : public std::runtime_error {
 public:
  run_aborted_error(std::string msg, double rate)
      : std::runtime_error(std::move(msg)), rejection_rate(rate) {}

  double rejection_rate;
};

/// Malformed config or CSV input; the message names the offending line(s).
class parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dirac
