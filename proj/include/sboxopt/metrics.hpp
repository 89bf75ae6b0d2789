#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fitness.hpp"
#include "sbox.hpp"
#include "spectral.hpp"

namespace sboxopt {

struct Metrics {
  std::vector<int> coordinate_nls;
  Rational acnv;
  int nl = 0;
  Rational sac_average;

  int min_coordinate_nl() const {
    return *std::min_element(coordinate_nls.begin(), coordinate_nls.end());
  }
  int max_coordinate_nl() const {
    return *std::max_element(coordinate_nls.begin(), coordinate_nls.end());
  }

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

inline Metrics compute_metrics(const SBox& s) {
  Metrics m;
  m.coordinate_nls = coordinate_nonlinearities(s);
  m.acnv = acnv(m.coordinate_nls);
  m.nl = sbox_nonlinearity(s);
  m.sac_average = sac(s).average;
  return m;
}

enum class StopReason { stall, max_iterations };

inline const char* to_string(StopReason r) {
  return r == StopReason::stall ? "stall" : "max_iterations";
}

struct FitnessStep {
  std::uint64_t iteration;
  FitnessValue fitness;

  friend bool operator==(const FitnessStep&, const FitnessStep&) = default;
};

// Outcome of a single optimizer run.
struct RunTrace {
  std::uint64_t iterations = 0;  // proposals made
  std::uint64_t accepted = 0;
  FitnessValue initial_fitness;
  FitnessValue final_fitness;
  std::vector<FitnessStep> fitness_history;  // one entry per accepted move
  StopReason stop = StopReason::stall;
  SBox final_sbox = SBox::identity(kMinDimension);
  Metrics final_metrics;

  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

}  // namespace sboxopt
