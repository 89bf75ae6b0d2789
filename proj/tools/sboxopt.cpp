// sboxopt: analyze, optimize and compare bijective S-boxes.
//
// Exit codes: 0 success, 1 usage error, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sboxopt/sboxopt.hpp>

namespace {

using namespace sboxopt;

constexpr int kUsageError = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A corpus id, "identity" (the 8-bit identity table), or a path to an .sbx file.
SBox load_input(const std::string& source) {
  if (corpus_contains(source)) return corpus_get(source).sbox;
  if (source == "identity") return SBox::identity(8);
  std::ifstream in(source);
  if (!in) throw InputError("cannot open '" + source + "' (not a file or corpus id)");
  try {
    return read_sbox(in);
  } catch (const SBoxError& e) {
    throw InputError(source + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Layout layout_for(const SBox& s) { return s.n() == 8 ? Layout::grid16 : Layout::flat; }

int run_analyze(const std::vector<std::string>& inputs, const std::string& format,
                bool sac_matrix, int magnitude, bool with_lat) {
  AnalyzeOptions opts;
  opts.sac_matrix = sac_matrix;
  if (magnitude > 0) opts.magnitude = magnitude;

  std::vector<AnalysisReport> reports;
  std::vector<SBox> boxes;
  for (const auto& in : inputs) {
    boxes.push_back(load_input(in));
    reports.push_back(analyze(boxes.back(), in, opts));
  }

  if (format == "json") {
    json out = json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    std::cout << (reports.size() == 1 ? out[0] : out).dump(2) << '\n';
  } else if (format == "csv") {
    int prev_n = -1;
    for (const auto& r : reports) {
      if (r.n != prev_n) std::cout << csv_header(r.n) << '\n';
      prev_n = r.n;
      std::cout << to_csv_row(r) << '\n';
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << '\n';
      std::cout << to_text(reports[i]);
      if (with_lat) std::cout << "lat:\n" << lat_text(boxes[i]);
    }
  }
  return 0;
}

int run_compare(const std::vector<std::string>& inputs, const std::string& format) {
  ComparisonTable table;
  for (const auto& in : inputs) table.push_back(comparison_row(in, load_input(in)));
  sort_table(table);
  if (format == "json") {
    std::cout << to_json(table).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << to_csv(table);
  } else {
    std::cout << to_text(table);
  }
  return 0;
}

struct OptimizeFlags {
  std::string algorithm = "hill";
  std::uint64_t seed = 1;
  int magnitude = 10;
  std::size_t freeze = 0;
  std::uint64_t max_stall = 0;
  std::uint64_t max_iterations = 0;
  int runs = 1;
  int jobs = 1;
  int n = 8;
  std::string input;
  std::string output;
  std::string summary;
  bool trace = false;
};

int run_optimize(const OptimizeFlags& f) {
  OptimizeOptions opts;
  opts.algorithm = f.algorithm == "bandit"    ? Algorithm::bandit
                   : f.algorithm == "compose" ? Algorithm::compose
                                              : Algorithm::hill;
  opts.seed = f.seed;
  opts.magnitude = f.magnitude;
  opts.freeze.k = f.freeze;
  if (f.max_stall) opts.max_stall = f.max_stall;
  if (f.max_iterations) opts.max_iterations = f.max_iterations;
  opts.runs = f.runs;
  opts.jobs = f.jobs;
  opts.n = f.n;
  if (!f.input.empty()) {
    opts.start = load_input(f.input);
    opts.n = opts.start->n();
  }

  if (opts.n < kMinDimension || opts.n > kMaxDimension) {
    throw UsageError("--n must be in [" + std::to_string(kMinDimension) + "," +
                     std::to_string(kMaxDimension) + "]");
  }
  const std::size_t size = std::size_t{1} << opts.n;
  if (opts.freeze.k + 1 >= size) {
    throw UsageError("--freeze must be < 2^n - 1 = " + std::to_string(size - 1));
  }
  try {
    PowerTable check(opts.n, opts.magnitude);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  OptimizeResult result;
  try {
    result = optimize(opts);
  } catch (const SBoxError& e) {
    throw UsageError(e.what());
  }

  const auto& best = result.runs[result.best];
  const auto& m = best.final_trace().final_metrics;
  std::ostringstream sbx;
  sbx << "# sboxopt optimize algorithm=" << f.algorithm << " seed=" << best.seed
      << " magnitude=" << opts.magnitude << " freeze=" << opts.freeze.k << '\n'
      << "# acnv=" << render_fixed(m.acnv, 2) << " nl=" << m.nl << '\n'
      << serialize_sbox(best.final_trace().final_sbox, layout_for(best.start));
  write_text(f.output, sbx.str());

  const auto summary = summary_json(opts, result, f.trace).dump(2) + "\n";
  if (!f.summary.empty()) {
    write_text(f.summary, summary);
  } else if (!f.output.empty() && f.output != "-") {
    std::cout << summary;
  }
  return 0;
}

int run_export(const std::string& id, const std::string& layout, const std::string& out) {
  const auto entry = corpus_get(id);
  std::string text = "# " + entry.id + ": " + entry.provenance + "\n" +
                     serialize_sbox(entry.sbox, layout == "flat" ? Layout::flat
                                                                 : Layout::grid16);
  write_text(out, text);
  return 0;
}

int run_list() {
  for (const auto& id : corpus_list()) {
    std::cout << id << "\t" << corpus_get(id).provenance << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze and optimize the coordinate nonlinearity of bijective S-boxes"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string format = "text";
  bool sac_matrix = false;
  bool with_lat = false;
  int magnitude = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report NL, coordinate NLs, ACNV and SAC");
  analyze_cmd->add_option("inputs", inputs, "Corpus ids or .sbx files")->required();
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  analyze_cmd->add_flag("--sac-matrix", sac_matrix, "Include the full SAC matrix");
  analyze_cmd->add_option("--magnitude", magnitude, "Also report E(S) for this magnitude")
      ->check(CLI::Range(1, 64));
  analyze_cmd->add_flag("--lat", with_lat, "Print the full LAT (text format only)");

  OptimizeFlags of;
  auto* opt_cmd = app.add_subcommand("optimize", "Run hill climbing, the bandit search, or both");
  opt_cmd->add_option("--algorithm", of.algorithm)
      ->check(CLI::IsMember({"hill", "bandit", "compose"}));
  opt_cmd->add_option("--seed", of.seed, "Base seed; run i uses seed + i");
  opt_cmd->add_option("--magnitude", of.magnitude)->check(CLI::Range(1, 64));
  opt_cmd->add_option("--freeze", of.freeze, "Keep the first K DLUT entries fixed");
  opt_cmd->add_option("--max-stall", of.max_stall,
                      "Consecutive rejections before a stage stops (default per stage)");
  opt_cmd->add_option("--max-iterations", of.max_iterations, "Hard cap on proposals per stage");
  opt_cmd->add_option("--runs", of.runs)->check(CLI::Range(1, 1000000));
  opt_cmd->add_option("--jobs", of.jobs, "Runs executed concurrently")->check(CLI::Range(1, 1024));
  opt_cmd->add_option("--n", of.n, "Dimension of random starts");
  opt_cmd->add_option("--input", of.input, "Start from this corpus id or .sbx file");
  opt_cmd->add_option("--output", of.output, "Best final S-box (.sbx); stdout if omitted");
  opt_cmd->add_option("--summary", of.summary, "JSON run summary path");
  opt_cmd->add_flag("--trace", of.trace, "Include fitness history in the summary");

  std::vector<std::string> cmp_inputs;
  std::string cmp_format = "text";
  auto* cmp_cmd = app.add_subcommand("compare", "Min/max coordinate NL and ACNV table");
  cmp_cmd->add_option("inputs", cmp_inputs)->required();
  cmp_cmd->add_option("--format", cmp_format)->check(CLI::IsMember({"text", "json", "csv"}));

  std::string export_id;
  std::string export_layout = "grid16";
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export", "Write a corpus S-box as .sbx");
  export_cmd->add_option("id", export_id)->required();
  export_cmd->add_option("--layout", export_layout)->check(CLI::IsMember({"grid16", "flat"}));
  export_cmd->add_option("-o,--output", export_out);

  auto* list_cmd = app.add_subcommand("list", "List embedded corpus ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(inputs, format, sac_matrix, magnitude, with_lat);
    if (opt_cmd->parsed()) return run_optimize(of);
    if (cmp_cmd->parsed()) return run_compare(cmp_inputs, cmp_format);
    if (export_cmd->parsed()) return run_export(export_id, export_layout, export_out);
    if (list_cmd->parsed()) return run_list();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << opt_cmd->help();
    return kUsageError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SBoxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsageError;
}
