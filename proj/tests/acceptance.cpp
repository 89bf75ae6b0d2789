// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sboxopt/sboxopt.hpp>

#include "oracles.hpp"

using namespace sboxopt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// 1. S_c metrics.
Outcome sc_fidelity() {
  Outcome o;
  const auto m = compute_metrics(corpus_get("paper_sc").sbox);
  o.check(m.coordinate_nls == std::vector<int>(8, 114), "coordinate NLs " + join(m.coordinate_nls));
  o.check(m.nl == 96, "NL " + std::to_string(m.nl));
  o.check(m.acnv == Rational(114), "ACNV " + render_short(m.acnv));
  o.check(m.sac_average == Rational(1, 2), "SAC " + render_fixed(m.sac_average, 7));
  return o;
}

// 2. Composed S-box, coordinate vector compared literally.
Outcome composed() {
  Outcome o;
  const auto m = compute_metrics(corpus_get("paper_sc_best").sbox);
  const std::vector<int> expected{116, 114, 116, 114, 114, 114, 114, 114};
  o.check(m.coordinate_nls == expected,
          "coordinate NLs (f1..f8, f1 = most significant bit) " + join(m.coordinate_nls) +
              " != " + join(expected));
  o.check(m.acnv == Rational(229, 2), "ACNV " + render_short(m.acnv));
  return o;
}

// 3. Optimized classical tables.
Outcome optimized_tables() {
  Outcome o;
  for (const char* base : {"aes", "whirlpool", "fantomas", "skipjack"}) {
    const std::string id = std::string("paper_") + base + "_opt";
    const auto a = acnv(corpus_get(id).sbox);
    o.check(a == Rational(114), id + " ACNV " + render_short(a));
  }
  const auto aes = corpus_get("aes").sbox;
  const auto opt = corpus_get("paper_aes_opt").sbox;
  for (std::size_t i = 0; i < 16; ++i) {
    o.check(aes[i] == opt[i], "optimized AES differs at index " + std::to_string(i));
  }
  return o;
}

// 4. AES, with NL confirmed by direct Hamming distances over all components.
Outcome aes_metrics() {
  Outcome o;
  const auto s = corpus_get("aes").sbox;
  const auto m = compute_metrics(s);
  o.check(m.nl == 112, "NL " + std::to_string(m.nl));
  o.check(oracle::sbox_nonlinearity(s) == 112, "brute-force NL");
  o.check(m.coordinate_nls == std::vector<int>(8, 112), "coordinate NLs " + join(m.coordinate_nls));
  o.check(m.acnv == Rational(112), "ACNV " + render_short(m.acnv));
  return o;
}

// 5. Fast transform and LAT against the definitions.
Outcome oracle_equivalence() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (1u << n);
    for (std::uint64_t code = 0; code < count; ++code) {
      TruthTable t{n, std::vector<std::uint8_t>(std::size_t{1} << n)};
      for (std::size_t x = 0; x < t.size(); ++x) t.bits[x] = (code >> x) & 1;
      const auto fast = walsh_transform(t).values;
      const auto slow = oracle::naive_walsh(t.bits);
      if (!std::equal(fast.begin(), fast.end(), slow.begin())) {
        o.check(false, "Walsh mismatch n=" + std::to_string(n));
        return o;
      }
    }
  }
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    TruthTable t{8, std::vector<std::uint8_t>(256)};
    for (auto& b : t.bits) b = static_cast<std::uint8_t>(rng.below(2));
    const auto fast = walsh_transform(t).values;
    const auto slow = oracle::naive_walsh(t.bits);
    if (!std::equal(fast.begin(), fast.end(), slow.begin())) {
      o.check(false, "Walsh mismatch on random 8-variable function");
      return o;
    }
  }
  std::vector<std::uint16_t> perm{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    const SBox s(perm);
    const auto table = lat(s);
    for (std::uint32_t a = 0; a < 8; ++a) {
      for (std::uint32_t c = 0; c < 8; ++c) {
        if (table.at(a, c) != oracle::lat_entry(s, a, c)) {
          o.check(false, "LAT mismatch at n=3");
          return o;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return o;
}

// 6. Fitness fixtures.
Outcome fitness_fixtures() {
  Outcome o;
  o.check(evaluate(SBox::identity(8), {10}).total == (uint128{1} << 73), "identity E != 2^73");
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = evaluate(random_sbox(8, rng), {2});
    if (e.total != (uint128{8} << 14)) {
      o.check(false, "M=2 fitness " + to_string(e));
      break;
    }
  }
  for (const auto& id : corpus_list()) {
    o.check(evaluate(corpus_get(id).sbox, {2}).total == (uint128{8} << 14), id + " M=2");
  }
  return o;
}

bool move_matches(const SBox& s, int j, std::uint32_t arm, const PowerTable& p) {
  auto state = coordinate_state(s, j, p);
  const auto predicted = evaluate_after_bit_swap(s, state, j, arm, p);
  const auto [x0, x1] = bit_swap_pair(s, j, arm);
  apply_two_point_flip(state.spectrum, static_cast<std::uint32_t>(x0), false,
                       static_cast<std::uint32_t>(x1));
  const auto fresh = coordinate_state(bit_swap_inputs(s, j, arm), j, p);
  return state.spectrum == fresh.spectrum && predicted == fresh.fitness;
}

// 7. Incremental updates against recomputation.
Outcome incremental() {
  Outcome o;
  Rng rng(7);
  const PowerTable p8(8, 10);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto s = random_sbox(8, rng);
    const int j = 1 + static_cast<int>(rng.below(8));
    const auto arm = static_cast<std::uint32_t>(rng.below(128));
    if (!move_matches(s, j, arm, p8)) {
      o.check(false, "n=8 mismatch at trial " + std::to_string(trial));
      return o;
    }
  }
  const PowerTable p3(3, 10);
  std::vector<std::uint16_t> perm{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    const SBox s(perm);
    for (int j = 1; j <= 3; ++j) {
      for (std::uint32_t arm = 0; arm < 4; ++arm) {
        if (!move_matches(s, j, arm, p3)) {
          o.check(false, "n=3 mismatch");
          return o;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return o;
}

bool strictly_decreasing(const RunTrace& t) {
  FitnessValue prev = t.initial_fitness;
  for (const auto& step : t.fitness_history) {
    if (!(step.fitness < prev)) return false;
    prev = step.fitness;
  }
  return true;
}

std::string acnv_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + render_short(v[i]);
  return s;
}

// 8. Hill climbing from random starts.
Outcome hill_band(std::string& note) {
  Outcome o;
  std::vector<Rational> finals;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OptimizeOptions opts;
    opts.algorithm = Algorithm::hill;
    opts.seed = seed;
    const auto r = optimize(opts);
    const auto& t = r.runs[0].final_trace();
    finals.push_back(t.final_metrics.acnv);
    o.check(t.final_metrics.acnv >= Rational(110), "seed " + std::to_string(seed) + " below 110");
    o.check(strictly_decreasing(t), "seed " + std::to_string(seed) + " history not decreasing");
  }
  o.check(*std::max_element(finals.begin(), finals.end()) >= Rational(112), "best below 112");
  note = "ACNV " + acnv_list(finals);
  return o;
}

// 9. Bandit search from random starts, plus hill-then-bandit composition.
Outcome bandit_band(std::string& note) {
  Outcome o;
  std::vector<Rational> finals;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OptimizeOptions opts;
    opts.algorithm = Algorithm::bandit;
    opts.seed = seed;
    const auto& t = optimize(opts).runs[0].final_trace();
    finals.push_back(t.final_metrics.acnv);
    o.check(strictly_decreasing(t), "seed " + std::to_string(seed) + " history not decreasing");
  }
  const auto reached = std::count_if(finals.begin(), finals.end(),
                                     [](const Rational& a) { return a >= Rational(110); });
  o.check(reached >= 4, std::to_string(reached) + " of 5 runs reached 110");
  auto sorted = finals;
  std::sort(sorted.begin(), sorted.end());
  o.check(sorted[2] >= Rational(112), "median " + render_short(sorted[2]) + " below 112");

  std::vector<Rational> composed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OptimizeOptions opts;
    opts.algorithm = Algorithm::compose;
    opts.seed = seed;
    const auto run = optimize(opts).runs[0];
    const auto before = run.stages[0].trace.final_metrics.acnv;
    const auto after = run.stages[1].trace.final_metrics.acnv;
    composed.push_back(after);
    o.check(after >= before, "compose seed " + std::to_string(seed) + " decreased ACNV");
  }
  note = "bandit ACNV " + acnv_list(finals) + ", median " + render_short(sorted[2]) +
         "; compose ACNV " + acnv_list(composed);
  return o;
}

// 10. Bandit model shape, worked move and coordinate isolation.
Outcome bandit_structure() {
  Outcome o;
  const auto x = fixtures::x_dlut();
  const auto m = build_model(x);
  o.check(m.n() == 4 && m.arms_per_bandit() == 8, "model shape");
  const auto pair = bit_swap_pair(x, 1, 0b010);
  const auto lo = std::min(pair.x0, pair.x1) + 1;
  const auto hi = std::max(pair.x0, pair.x1) + 1;
  o.check(lo == 4 && hi == 14, "worked move swaps " + std::to_string(lo) + "," + std::to_string(hi));
  const auto y = bit_swap_inputs(x, 1, 0b010);
  o.check(y[3] == x[13] && y[13] == x[3], "worked move result");

  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_sbox(8, rng);
    for (int j = 1; j <= 8; ++j) {
      const auto mask = coordinate_mask(8, j);
      for (std::uint32_t arm = 0; arm < 128; ++arm) {
        const auto t = bit_swap_inputs(s, j, arm);
        int changed = 0;
        for (std::size_t i = 0; i < 256; ++i) {
          const auto d = static_cast<std::uint32_t>(s[i] ^ t[i]);
          if (d != 0 && d != mask) {
            o.check(false, "move touched another coordinate");
            return o;
          }
          changed += d != 0;
        }
        if (changed != 2) {
          o.check(false, "move changed " + std::to_string(changed) + " entries");
          return o;
        }
      }
    }
  }
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SBOXOPT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 11. Repeated CLI invocations write identical files.
Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("sboxopt_accept_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::vector<std::string> cases = {
      "optimize --algorithm hill --seed 11 --trace",
      "optimize --algorithm bandit --seed 12 --runs 3 --trace",
      "optimize --algorithm compose --seed 13 --runs 2 --jobs 2 --trace",
      "optimize --input aes --freeze 16 --algorithm compose --seed 14",
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto base = dir / ("case" + std::to_string(c) + "_" + std::to_string(rep));
      const int code = run_cli(cases[c] + " --output " + base.string() + ".sbx --summary " +
                               base.string() + ".json");
      o.check(code == 0, "'" + cases[c] + "' exited " + std::to_string(code));
      outputs[rep] = slurp(base.string() + ".sbx") + slurp(base.string() + ".json");
    }
    o.check(!outputs[0].empty() && outputs[0] == outputs[1], "'" + cases[c] + "' differs");
  }
  {
    const auto a = dir / "analyze_a.json";
    const auto b = dir / "analyze_b.json";
    const std::string cmd = std::string(SBOXOPT_CLI) +
                            " analyze paper_sc_best --format json --sac-matrix --magnitude 10 > ";
    const int ca = std::system((cmd + a.string()).c_str());
    const int cb = std::system((cmd + b.string()).c_str());
    o.check(ca == 0 && cb == 0, "analyze failed");
    o.check(!slurp(a).empty() && slurp(a) == slurp(b), "analyze output differs");
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "S_c corpus fidelity", [](std::string&) { return sc_fidelity(); }},
      {2, "composed S-box coordinates and ACNV", [](std::string&) { return composed(); }},
      {3, "optimized classical S-boxes", [](std::string&) { return optimized_tables(); }},
      {4, "AES nonlinearity and ACNV", [](std::string&) { return aes_metrics(); }},
      {5, "fast transforms match definitions", [](std::string&) { return oracle_equivalence(); }},
      {6, "fitness fixtures", [](std::string&) { return fitness_fixtures(); }},
      {7, "incremental updates match recomputation", [](std::string&) { return incremental(); }},
      {8, "hill climbing band, seeds 1-5", hill_band},
      {9, "bandit band and composition", bandit_band},
      {10, "bandit model structure", [](std::string&) { return bandit_structure(); }},
      {11, "CLI determinism", [](std::string&) { return determinism(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string note;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(note);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
         << secs << " s)";
    if (!note.empty()) line << " | " << note;
    if (!o.detail.empty()) line << " | " << o.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
