#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bellsq {

// Outcome of a grid or sampling check. A violation is the amount by which the
// checked inequality fails; negative values mean it holds with slack.
struct VerificationReport {
  std::string suite;
  std::size_t samples = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<double> worst_location;
  double tolerance = 0.0;
  bool passed = true;
  std::uint64_t seed = 0;

  void record(double violation, std::vector<double> location) {
    ++samples;
    if (violation > worst_violation) {
      worst_violation = violation;
      worst_location = std::move(location);
    }
  }

  // Merges another partial report for the same suite (parallel workers).
  void merge(const VerificationReport& other) {
    samples += other.samples;
    if (other.worst_violation > worst_violation) {
      worst_violation = other.worst_violation;
      worst_location = other.worst_location;
    }
  }

  VerificationReport& finalize() {
    passed = worst_violation <= tolerance;
    return *this;
  }
};

}  // namespace bellsq
