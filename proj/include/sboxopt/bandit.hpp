#pragma once

// The n-bandit reformulation: bandit j owns coordinate f_j, and each of its
// 2^{n-1} arms exchanges the two outputs that differ only in bit j. Pulling
// an arm of bandit j changes the truth table of f_j in two positions and
// leaves every other coordinate untouched, so each bandit keeps its own
// spectrum and fitness.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fitness.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "sbox.hpp"

namespace sboxopt {

class BanditModel;

struct BanditConfig {
  int magnitude = 10;
  std::uint64_t seed = 1;
  // Consecutive unsuccessful attempts before stopping; unset means n * 2^{n-1}.
  std::optional<std::uint64_t> max_stall;
  // Not part of the original method: arms touching a frozen input are never
  // drawn.
  FrozenPrefix freeze;
  std::optional<std::uint64_t> max_iterations;
  std::function<void(const BanditModel&)> on_accept;
};

inline std::uint64_t default_bandit_stall(int n) {
  return static_cast<std::uint64_t>(n) << (n - 1);
}

class BanditModel {
 public:
  BanditModel(SBox s, int magnitude)
      : sbox_(std::move(s)), powers_(sbox_.n(), magnitude) {
    bandits_.reserve(sbox_.n());
    for (int j = 1; j <= sbox_.n(); ++j) {
      bandits_.push_back(coordinate_state(sbox_, j, powers_));
    }
  }

  int n() const noexcept { return sbox_.n(); }
  std::uint32_t arms_per_bandit() const noexcept {
    return std::uint32_t{1} << (sbox_.n() - 1);
  }
  const SBox& sbox() const noexcept { return sbox_; }
  const PowerTable& powers() const noexcept { return powers_; }

  // 1-based, matching coordinate numbering.
  const CoordinateState& bandit(int coordinate) const {
    return bandits_.at(coordinate - 1);
  }

  FitnessValue total_fitness() const {
    FitnessValue t;
    for (const auto& b : bandits_) t += b.fitness;
    return t;
  }

  // Pulls `arm` of bandit `coordinate`. The move is kept iff the bandit's
  // fitness strictly drops; otherwise the model is left exactly as it was.
  bool activate(int coordinate, std::uint32_t arm) {
    auto& state = bandits_.at(coordinate - 1);
    const auto [x0, x1] = bit_swap_pair(sbox_, coordinate, arm);
    const auto lo = static_cast<std::uint32_t>(x0);
    const auto hi = static_cast<std::uint32_t>(x1);
    const auto next =
        column_fitness_after_flip(state.spectrum, state.fitness, lo, false, hi, powers_);
    if (!(next < state.fitness)) return false;
    apply_two_point_flip(state.spectrum, lo, false, hi);
    state.fitness = next;
    state.nonlinearity = nonlinearity_of(state.spectrum);
    sbox_.swap_entries(x0, x1);
    return true;
  }

 private:
  SBox sbox_;
  PowerTable powers_;
  std::vector<CoordinateState> bandits_;
};

inline BanditModel build_model(const SBox& s, int magnitude = 10) {
  return BanditModel(s, magnitude);
}

// Lowest-nonlinearity bandit; ties are broken uniformly with `rng`.
inline int choose_bandit(const std::vector<int>& nls, Rng& rng) {
  int best = nls.front();
  for (int v : nls) best = std::min(best, v);
  std::vector<int> ties;
  for (std::size_t j = 0; j < nls.size(); ++j) {
    if (nls[j] == best) ties.push_back(static_cast<int>(j) + 1);
  }
  if (ties.size() == 1) return ties.front();
  return ties[rng.below(ties.size())];
}

inline int choose_bandit(const BanditModel& m, Rng& rng) {
  std::vector<int> nls(m.n());
  for (int j = 1; j <= m.n(); ++j) nls[j - 1] = m.bandit(j).nonlinearity;
  return choose_bandit(nls, rng);
}

// Arms of each bandit whose two inputs both lie outside the frozen prefix.
// Frozen inputs keep their outputs, so this set is fixed for a whole run.
inline std::vector<std::vector<std::uint32_t>> legal_arms(const SBox& s,
                                                          FrozenPrefix freeze) {
  std::vector<std::vector<std::uint32_t>> out(s.n());
  const std::uint32_t arms = std::uint32_t{1} << (s.n() - 1);
  for (int j = 1; j <= s.n(); ++j) {
    auto& list = out[j - 1];
    if (freeze.k == 0) list.reserve(arms);
    for (std::uint32_t arm = 0; arm < arms; ++arm) {
      const auto [x0, x1] = bit_swap_pair(s, j, arm);
      if (!freeze.frozen(x0) && !freeze.frozen(x1)) list.push_back(arm);
    }
  }
  return out;
}

inline RunTrace bandit_optimize(const SBox& start, const BanditConfig& cfg) {
  const int n = start.n();
  const std::uint64_t max_stall = cfg.max_stall.value_or(default_bandit_stall(n));
  if (max_stall < 1) throw SBoxError("max_stall must be >= 1");
  if (cfg.freeze.k >= start.size()) {
    throw SBoxError("frozen prefix k=" + std::to_string(cfg.freeze.k) +
                    " covers the whole table");
  }
  const auto arms = legal_arms(start, cfg.freeze);
  for (int j = 1; j <= n; ++j) {
    if (arms[j - 1].empty()) {
      throw SBoxError("frozen prefix k=" + std::to_string(cfg.freeze.k) +
                      " leaves bandit " + std::to_string(j) + " without arms");
    }
  }

  BanditModel model(start, cfg.magnitude);
  Rng rng(cfg.seed);
  RunTrace trace;
  trace.initial_fitness = model.total_fitness();

  std::uint64_t stall = 0;
  while (stall < max_stall) {
    if (cfg.max_iterations && trace.iterations >= *cfg.max_iterations) {
      trace.stop = StopReason::max_iterations;
      break;
    }
    ++trace.iterations;
    const int coordinate = choose_bandit(model, rng);
    const auto& choices = arms[coordinate - 1];
    const auto arm = choices[rng.below(choices.size())];
    if (model.activate(coordinate, arm)) {
      ++trace.accepted;
      trace.fitness_history.push_back({trace.iterations, model.total_fitness()});
      stall = 0;
      if (cfg.on_accept) cfg.on_accept(model);
    } else {
      ++stall;
    }
  }

  trace.final_fitness = model.total_fitness();
  trace.final_metrics = compute_metrics(model.sbox());
  trace.final_sbox = model.sbox();
  return trace;
}

}  // namespace sboxopt
