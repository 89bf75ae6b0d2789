#pragma once

// Analysis reports and comparison tables in text, csv and json form.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fitness.hpp"
#include "metrics.hpp"
#include "sbox.hpp"
#include "spectral.hpp"

namespace sboxopt {

using json = nlohmann::json;

// Rounds half away from zero to `places` decimals using integer arithmetic.
inline std::string render_fixed(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = r.numerator() < 0;
  const std::int64_t num = std::llabs(r.numerator());
  const std::int64_t den = r.denominator();
  // round(num * scale / den); num * scale stays well inside 64 bits for
  // every quantity reported here (numerators below 2^32, scale <= 10^7).
  const std::int64_t scaled = (num * scale * 2 + den) / (2 * den);
  std::string digits = std::to_string(scaled);
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, places + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - places, ".");
  }
  return (negative && scaled != 0 ? "-" : "") + digits;
}

// Shortest exact decimal with at least one fractional digit (114.0, 114.5,
// 105.75). Non-terminating values fall back to four decimals.
inline std::string render_short(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return render_fixed(r, 4);
  return render_fixed(r, std::max({1, twos, fives}));
}

inline json rational_json(const Rational& r, int places) {
  return {{"num", r.numerator()}, {"den", r.denominator()},
          {"value", render_fixed(r, places)}};
}

inline Rational rational_from_json(const json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline json metrics_json(const Metrics& m) {
  return {{"coordinate_nls", m.coordinate_nls},
          {"min_coordinate_nl", m.min_coordinate_nl()},
          {"max_coordinate_nl", m.max_coordinate_nl()},
          {"acnv", rational_json(m.acnv, 2)},
          {"nl", m.nl},
          {"sac_average", rational_json(m.sac_average, 7)}};
}

struct AnalysisReport {
  std::string source;
  int n = 0;
  Metrics metrics;
  std::optional<std::vector<std::vector<Rational>>> sac_matrix;
  std::optional<int> magnitude;
  std::optional<FitnessValue> fitness;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalyzeOptions {
  bool sac_matrix = false;
  std::optional<int> magnitude;  // adds E(S) for this magnitude
};

inline AnalysisReport analyze(const SBox& s, std::string source,
                              const AnalyzeOptions& opts = {}) {
  AnalysisReport r;
  r.source = std::move(source);
  r.n = s.n();
  r.metrics.coordinate_nls = coordinate_nonlinearities(s);
  r.metrics.acnv = acnv(r.metrics.coordinate_nls);
  r.metrics.nl = sbox_nonlinearity(s);
  auto sac_result = sac(s);
  r.metrics.sac_average = sac_result.average;
  if (opts.sac_matrix) r.sac_matrix = std::move(sac_result.matrix);
  if (opts.magnitude) {
    r.magnitude = *opts.magnitude;
    r.fitness = evaluate(s, FitnessConfig{*opts.magnitude});
  }
  return r;
}

inline json to_json(const AnalysisReport& r) {
  json j = metrics_json(r.metrics);
  j["source"] = r.source;
  j["n"] = r.n;
  if (r.sac_matrix) {
    json rows = json::array();
    for (const auto& row : *r.sac_matrix) {
      json cells = json::array();
      for (const auto& c : row) cells.push_back(rational_json(c, 7));
      rows.push_back(std::move(cells));
    }
    j["sac_matrix"] = std::move(rows);
  }
  if (r.fitness) {
    j["fitness"] = {{"magnitude", *r.magnitude}, {"value", to_string(*r.fitness)}};
  }
  return j;
}

inline AnalysisReport analysis_report_from_json(const json& j) {
  AnalysisReport r;
  r.source = j.at("source").get<std::string>();
  r.n = j.at("n").get<int>();
  r.metrics.coordinate_nls = j.at("coordinate_nls").get<std::vector<int>>();
  r.metrics.acnv = rational_from_json(j.at("acnv"));
  r.metrics.nl = j.at("nl").get<int>();
  r.metrics.sac_average = rational_from_json(j.at("sac_average"));
  if (j.contains("sac_matrix")) {
    std::vector<std::vector<Rational>> m;
    for (const auto& row : j["sac_matrix"]) {
      auto& out = m.emplace_back();
      for (const auto& c : row) out.push_back(rational_from_json(c));
    }
    r.sac_matrix = std::move(m);
  }
  if (j.contains("fitness")) {
    r.magnitude = j["fitness"].at("magnitude").get<int>();
    r.fitness = fitness_from_string(j["fitness"].at("value").get<std::string>());
  }
  return r;
}

inline std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "source: " << r.source << '\n';
  out << "n: " << r.n << '\n';
  out << "coordinate_nl:";
  for (int v : r.metrics.coordinate_nls) out << ' ' << v;
  out << '\n';
  out << "min_nl: " << r.metrics.min_coordinate_nl() << '\n';
  out << "max_nl: " << r.metrics.max_coordinate_nl() << '\n';
  out << "acnv: " << render_fixed(r.metrics.acnv, 2) << '\n';
  out << "nl: " << r.metrics.nl << '\n';
  out << "sac: " << render_fixed(r.metrics.sac_average, 7) << '\n';
  if (r.sac_matrix) {
    out << "sac_matrix:\n";
    for (const auto& row : *r.sac_matrix) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? " " : "  ") << render_fixed(row[c], 7);
      }
      out << '\n';
    }
  }
  if (r.fitness) {
    out << "fitness(M=" << *r.magnitude << "): " << to_string(*r.fitness) << '\n';
  }
  return out.str();
}

inline std::string csv_header(int n) {
  std::string h = "source,n,min_nl,max_nl,acnv,nl,sac";
  for (int j = 1; j <= n; ++j) h += ",f" + std::to_string(j);
  return h;
}

inline std::string to_csv_row(const AnalysisReport& r) {
  std::ostringstream out;
  out << r.source << ',' << r.n << ',' << r.metrics.min_coordinate_nl() << ','
      << r.metrics.max_coordinate_nl() << ',' << render_fixed(r.metrics.acnv, 2)
      << ',' << r.metrics.nl << ',' << render_fixed(r.metrics.sac_average, 7);
  for (int v : r.metrics.coordinate_nls) out << ',' << v;
  return out.str();
}

inline std::string lat_text(const SBox& s) {
  const auto table = lat(s);
  std::ostringstream out;
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t c = 0; c < table.size(); ++c) {
      out << (c ? " " : "") << table.at(a, c);
    }
    out << '\n';
  }
  return out.str();
}

// --- comparison tables -----------------------------------------------------

struct ComparisonRow {
  std::string label;
  int min_nl = 0;
  int max_nl = 0;
  Rational acnv;
};

using ComparisonTable = std::vector<ComparisonRow>;

inline ComparisonRow comparison_row(std::string label, const SBox& s) {
  const auto nls = coordinate_nonlinearities(s);
  return {std::move(label), *std::min_element(nls.begin(), nls.end()),
          *std::max_element(nls.begin(), nls.end()), acnv(nls)};
}

// Ascending by ACNV, ties by label.
inline void sort_table(ComparisonTable& t) {
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    if (a.acnv != b.acnv) return a.acnv < b.acnv;
    return a.label < b.label;
  });
}

inline std::string to_text(const ComparisonTable& t) {
  std::size_t width = 6;
  for (const auto& r : t) width = std::max(width, r.label.size());
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << pad("Method", width) << "  Min NL  Max NL  ACNV\n";
  for (const auto& r : t) {
    out << pad(r.label, width) << "  " << pad(std::to_string(r.min_nl), 6) << "  "
        << pad(std::to_string(r.max_nl), 6) << "  " << render_short(r.acnv) << '\n';
  }
  return out.str();
}

inline std::string to_csv(const ComparisonTable& t) {
  std::string out = "label,min_nl,max_nl,acnv\n";
  for (const auto& r : t) {
    out += r.label + ',' + std::to_string(r.min_nl) + ',' + std::to_string(r.max_nl) +
           ',' + render_short(r.acnv) + '\n';
  }
  return out;
}

inline json to_json(const ComparisonTable& t) {
  json rows = json::array();
  for (const auto& r : t) {
    rows.push_back({{"label", r.label},
                    {"min_nl", r.min_nl},
                    {"max_nl", r.max_nl},
                    {"acnv", {{"num", r.acnv.numerator()},
                              {"den", r.acnv.denominator()},
                              {"value", render_short(r.acnv)}}}});
  }
  return rows;
}

}  // namespace sboxopt
