#pragma once

// Stochastic hill climbing over random transpositions of the DLUT. A move is
// kept only if it strictly lowers the coordinate-column fitness; the run ends
// after a fixed number of consecutive rejections.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fitness.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "sbox.hpp"

namespace sboxopt {

struct HillClimbConfig {
  int magnitude = 10;
  FrozenPrefix freeze;
  // Consecutive rejections before stopping; unset means N(N-1)/4, N = 2^n.
  std::optional<std::uint64_t> max_stall;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_iterations;
  // Called with the working S-box after every accepted move.
  std::function<void(const SBox&)> on_accept;
};

inline std::uint64_t default_hill_stall(int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  return size * (size - 1) / 4;
}

inline RunTrace hill_climb(const SBox& start, const HillClimbConfig& cfg) {
  const int n = start.n();
  const std::size_t size = start.size();
  if (cfg.freeze.k + 2 > size) {
    throw SBoxError("frozen prefix k=" + std::to_string(cfg.freeze.k) +
                    " leaves fewer than two mutable entries");
  }
  const std::uint64_t max_stall = cfg.max_stall.value_or(default_hill_stall(n));
  if (max_stall < 1) throw SBoxError("max_stall must be >= 1");

  const PowerTable powers(n, cfg.magnitude);
  Rng rng(cfg.seed);
  SBox s = start;

  // coords[b] tracks output bit b (LSB index), i.e. coordinate n - b.
  std::vector<CoordinateState> coords;
  coords.reserve(n);
  for (int b = 0; b < n; ++b) coords.push_back(coordinate_state(s, n - b, powers));
  FitnessValue total;
  for (const auto& c : coords) total += c.fitness;

  RunTrace trace;
  trace.initial_fitness = total;

  const std::uint64_t mutable_count = size - cfg.freeze.k;
  std::vector<FitnessValue> proposed(n);
  std::uint64_t stall = 0;
  while (stall < max_stall) {
    if (cfg.max_iterations && trace.iterations >= *cfg.max_iterations) {
      trace.stop = StopReason::max_iterations;
      break;
    }
    ++trace.iterations;

    const auto i = static_cast<std::uint32_t>(cfg.freeze.k + rng.below(mutable_count));
    auto j = static_cast<std::uint32_t>(cfg.freeze.k + rng.below(mutable_count - 1));
    if (j >= i) ++j;

    const std::uint32_t yi = s[i];
    const std::uint32_t diff = yi ^ s[j];
    FitnessValue candidate = total;
    for (int b = 0; b < n; ++b) {
      if (!((diff >> b) & 1)) continue;
      proposed[b] = column_fitness_after_flip(coords[b].spectrum, coords[b].fitness,
                                              i, (yi >> b) & 1, j, powers);
      candidate.total = candidate.total - coords[b].fitness.total + proposed[b].total;
    }

    if (candidate < total) {
      for (int b = 0; b < n; ++b) {
        if (!((diff >> b) & 1)) continue;
        apply_two_point_flip(coords[b].spectrum, i, (yi >> b) & 1, j);
        coords[b].fitness = proposed[b];
      }
      s.swap_entries(i, j);
      total = candidate;
      ++trace.accepted;
      trace.fitness_history.push_back({trace.iterations, total});
      stall = 0;
      if (cfg.on_accept) cfg.on_accept(s);
    } else {
      ++stall;
    }
  }

  trace.final_fitness = total;
  trace.final_metrics = compute_metrics(s);
  trace.final_sbox = std::move(s);
  return trace;
}

}  // namespace sboxopt
