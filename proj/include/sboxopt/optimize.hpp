#pragma once

// Multi-run driver shared by the CLI and the acceptance suite: hill climbing,
// the bandit search, or both in sequence (the bandit stage starts from the
// hill-climbing result).

#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "bandit.hpp"
#include "hill_climb.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sbox.hpp"

namespace sboxopt {

enum class Algorithm { hill, bandit, compose };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::hill: return "hill";
    case Algorithm::bandit: return "bandit";
    case Algorithm::compose: return "compose";
  }
  return "?";
}

struct OptimizeOptions {
  Algorithm algorithm = Algorithm::hill;
  int n = 8;  // dimension of random starts
  std::uint64_t seed = 1;
  int magnitude = 10;
  FrozenPrefix freeze;
  std::optional<std::uint64_t> max_stall;  // overrides every stage's default
  std::optional<std::uint64_t> max_iterations;
  int runs = 1;
  int jobs = 1;
  std::optional<SBox> start;  // random start per run when unset
};

struct StageResult {
  std::string stage;
  std::uint64_t seed = 0;
  RunTrace trace;
};

struct RunResult {
  std::uint64_t seed = 0;  // seed + run index
  SBox start = SBox::identity(kMinDimension);
  std::vector<StageResult> stages;

  const RunTrace& final_trace() const { return stages.back().trace; }
};

struct OptimizeResult {
  std::vector<RunResult> runs;
  std::size_t best = 0;  // highest final ACNV, earliest run on ties
};

// Streams derived from a run seed.
enum : std::uint64_t { kStartStream = 0, kHillStream = 1, kBanditStream = 2 };

inline RunResult optimize_run(const OptimizeOptions& opts, std::uint64_t run_seed) {
  RunResult r;
  r.seed = run_seed;
  r.start = opts.start ? *opts.start
                       : random_sbox(opts.n, derive_seed(run_seed, kStartStream));
  SBox current = r.start;
  if (opts.algorithm != Algorithm::bandit) {
    HillClimbConfig cfg;
    cfg.magnitude = opts.magnitude;
    cfg.freeze = opts.freeze;
    cfg.max_stall = opts.max_stall;
    cfg.max_iterations = opts.max_iterations;
    cfg.seed = derive_seed(run_seed, kHillStream);
    auto trace = hill_climb(current, cfg);
    current = trace.final_sbox;
    r.stages.push_back({"hill", cfg.seed, std::move(trace)});
  }
  if (opts.algorithm != Algorithm::hill) {
    BanditConfig cfg;
    cfg.magnitude = opts.magnitude;
    cfg.freeze = opts.freeze;
    cfg.max_stall = opts.max_stall;
    cfg.max_iterations = opts.max_iterations;
    cfg.seed = derive_seed(run_seed, kBanditStream);
    auto trace = bandit_optimize(current, cfg);
    r.stages.push_back({"bandit", cfg.seed, std::move(trace)});
  }
  return r;
}

inline OptimizeResult optimize(const OptimizeOptions& opts) {
  if (opts.runs < 1) throw SBoxError("runs must be >= 1");
  OptimizeResult result;
  result.runs.resize(opts.runs);
  if (opts.jobs <= 1) {
    for (int i = 0; i < opts.runs; ++i) {
      result.runs[i] = optimize_run(opts, opts.seed + i);
    }
  } else {
    // Each run is independent, so results do not depend on scheduling.
    for (int first = 0; first < opts.runs; first += opts.jobs) {
      std::vector<std::future<RunResult>> batch;
      for (int i = first; i < std::min(opts.runs, first + opts.jobs); ++i) {
        batch.push_back(std::async(std::launch::async, optimize_run, std::cref(opts),
                                   opts.seed + i));
      }
      for (std::size_t k = 0; k < batch.size(); ++k) {
        result.runs[first + k] = batch[k].get();
      }
    }
  }
  for (std::size_t i = 1; i < result.runs.size(); ++i) {
    if (result.runs[i].final_trace().final_metrics.acnv >
        result.runs[result.best].final_trace().final_metrics.acnv) {
      result.best = i;
    }
  }
  return result;
}

inline json summary_json(const OptimizeOptions& opts, const OptimizeResult& result,
                         bool with_history) {
  json runs = json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& run = result.runs[i];
    json stages = json::array();
    for (const auto& st : run.stages) {
      const auto& t = st.trace;
      json s = {{"stage", st.stage},
                {"seed", st.seed},
                {"iterations", t.iterations},
                {"accepted", t.accepted},
                {"stop", to_string(t.stop)},
                {"initial_fitness", to_string(t.initial_fitness)},
                {"final_fitness", to_string(t.final_fitness)},
                {"metrics", metrics_json(t.final_metrics)}};
      if (with_history) {
        json h = json::array();
        for (const auto& step : t.fitness_history) {
          h.push_back({step.iteration, to_string(step.fitness)});
        }
        s["fitness_history"] = std::move(h);
      }
      stages.push_back(std::move(s));
    }
    runs.push_back({{"run", i},
                    {"seed", run.seed},
                    {"start", opts.start ? "input" : "random"},
                    {"stages", std::move(stages)},
                    {"final_metrics", metrics_json(run.final_trace().final_metrics)}});
  }
  return {{"algorithm", to_string(opts.algorithm)},
          {"n", result.runs.front().start.n()},
          {"seed", opts.seed},
          {"runs", opts.runs},
          {"magnitude", opts.magnitude},
          {"freeze", opts.freeze.k},
          {"best_run", result.best},
          {"results", std::move(runs)}};
}

}  // namespace sboxopt
