#include "dirprior/app/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dirprior::app {
namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidInput, message);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out = s.substr(b, e - b);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::int64_t parse_count(const std::string& cell, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size() || v < 0) {
    invalid("line " + std::to_string(line) + ": '" + cell +
            "' is not a non-negative integer count");
  }
  return v;
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    invalid(std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) invalid(std::string("'") + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> default_labels(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

json trace_json(const std::vector<TracePoint>& trace, const char* second) {
  json arr = json::array();
  for (const auto& t : trace) arr.push_back({{"tau", t.tau}, {second, t.content}});
  return arr;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) invalid("cannot write " + path.string());
  out << text;
  if (!out) invalid("write failed for " + path.string());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
}

BoundSpec bounds_from_json(const json& j) {
  if (!j.is_object()) invalid("bounds document must be a JSON object");
  std::vector<Bound> entries;
  if (j.contains("bounds")) {
    if (!j.at("bounds").is_array()) invalid("'bounds' must be an array");
    for (const auto& b : j.at("bounds")) {
      if (!b.is_object() || !b.contains("value") || !b.at("value").is_number()) {
        invalid("each bound needs a numeric 'value'");
      }
      const std::string type = value_or<std::string>(b, "type", "lower");
      Bound entry;
      if (type == "lower") {
        entry.kind = BoundKind::Lower;
      } else if (type == "upper") {
        entry.kind = BoundKind::Upper;
      } else {
        invalid("bound type must be 'lower' or 'upper', got '" + type + "'");
      }
      entry.value = b.at("value").get<double>();
      entries.push_back(entry);
    }
  } else if (j.contains("lower")) {
    for (double v : number_array(j, "lower")) entries.push_back({BoundKind::Lower, v});
  } else if (j.contains("row_lower") || j.contains("col_lower")) {
    const auto rows = number_array(j, "row_lower");
    const auto cols = number_array(j, "col_lower");
    for (double v : independence_bounds(rows, cols)) entries.push_back({BoundKind::Lower, v});
  } else {
    invalid("bounds document needs 'bounds', 'lower', or 'row_lower'/'col_lower'");
  }
  if (j.contains("k")) {
    const auto k = value_or<std::size_t>(j, "k", 0);
    if (k != entries.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "k = " + std::to_string(k) + " but " + std::to_string(entries.size()) +
                      " bounds were given");
    }
  }
  if (entries.size() < 2) invalid("at least two bounds are required");
  return BoundSpec(std::move(entries));
}

json to_json(const BoundSpec& spec) {
  json arr = json::array();
  for (const auto& b : spec.entries()) {
    arr.push_back({{"type", b.kind == BoundKind::Lower ? "lower" : "upper"}, {"value", b.value}});
  }
  return {{"k", spec.k()}, {"bounds", arr}};
}

json to_json(const SubSimplex& s) {
  return {{"k", s.k()},
          {"l", s.lower()},
          {"u", s.upper()},
          {"L", s.lower_sum()},
          {"edge_length", s.edge_length()},
          {"centroid", s.centroid()}};
}

json to_json(const ElicitedPrior& p) {
  return {{"params", p.params.alpha()},
          {"mode", p.mode_scale.xi},
          {"tau", p.mode_scale.tau},
          {"achieved_content", p.achieved_content},
          {"std_error", p.content_std_error},
          {"iterations", p.iterations},
          {"trace", trace_json(p.trace, "content")},
          {"uniform_sufficient", p.uniform_sufficient}};
}

ElicitedPrior elicited_prior_from_json(const json& j) {
  if (!j.is_object()) invalid("prior document must be a JSON object");
  ElicitedPrior p;
  p.params = DirichletParams(number_array(j, "params"));
  p.mode_scale.xi = number_array(j, "mode");
  p.mode_scale.tau = value_or<double>(j, "tau", p.params.tau());
  p.achieved_content = value_or<double>(j, "achieved_content", 0.0);
  p.content_std_error = value_or<double>(j, "std_error", 0.0);
  p.iterations = value_or<int>(j, "iterations", 0);
  p.uniform_sufficient = value_or<bool>(j, "uniform_sufficient", false);
  if (j.contains("trace")) {
    for (const auto& t : j.at("trace")) {
      p.trace.push_back({value_or<double>(t, "tau", 0.0), value_or<double>(t, "content", 0.0)});
    }
  }
  if (p.mode_scale.xi.size() != p.params.k()) {
    throw Error(ErrorCode::DimensionMismatch, "mode and params differ in length");
  }
  return p;
}

DirichletParams prior_params_from_json(const json& j) {
  if (!j.is_object()) invalid("prior document must be a JSON object");
  if (j.contains("params")) return DirichletParams(number_array(j, "params"));
  if (j.contains("alpha")) return DirichletParams(number_array(j, "alpha"));
  invalid("prior document needs 'params' or 'alpha'");
}

Table table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.size() < 3) invalid("CSV table needs a header row and at least two data rows");
  Table t;
  t.col_labels.assign(rows[0].begin() + 1, rows[0].end());
  const std::size_t c = t.col_labels.size();
  if (c < 2) invalid("CSV table needs at least two columns");
  std::vector<std::int64_t> counts;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != c + 1) {
      invalid("line " + std::to_string(r + 1) + ": expected " + std::to_string(c + 1) +
              " cells, found " + std::to_string(rows[r].size()));
    }
    t.row_labels.push_back(rows[r][0]);
    for (std::size_t q = 1; q <= c; ++q) counts.push_back(parse_count(rows[r][q], r + 1));
  }
  t.shape = ContingencyShape(t.row_labels.size(), c);
  t.counts = CountVector(std::move(counts));
  return t;
}

Table table_from_json(const json& j) {
  if (!j.is_object()) invalid("table document must be a JSON object");
  Table t;
  std::vector<std::int64_t> counts;
  std::size_t rows = 0;
  std::size_t cols = 0;
  auto count_of = [](const json& v) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      invalid("counts must be non-negative integers");
    }
    return v.get<std::int64_t>();
  };
  if (j.contains("table")) {
    const json& tab = j.at("table");
    if (!tab.is_array() || tab.empty() || !tab[0].is_array()) {
      invalid("'table' must be an array of rows");
    }
    rows = tab.size();
    cols = tab[0].size();
    for (const auto& row : tab) {
      if (!row.is_array() || row.size() != cols) invalid("table rows differ in length");
      for (const auto& v : row) counts.push_back(count_of(v));
    }
  } else if (j.contains("counts")) {
    rows = value_or<std::size_t>(j, "rows", 0);
    cols = value_or<std::size_t>(j, "cols", 0);
    if (!j.at("counts").is_array()) invalid("'counts' must be an array");
    for (const auto& v : j.at("counts")) counts.push_back(count_of(v));
    if (rows * cols != counts.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "rows x cols does not match the number of counts");
    }
  } else {
    invalid("table document needs 'table' or 'counts'");
  }
  t.shape = ContingencyShape(rows, cols);
  t.counts = CountVector(std::move(counts));
  t.row_labels = value_or<std::vector<std::string>>(j, "row_labels", default_labels("R", rows));
  t.col_labels = value_or<std::vector<std::string>>(j, "col_labels", default_labels("C", cols));
  if (t.row_labels.size() != rows || t.col_labels.size() != cols) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match the table");
  }
  return t;
}

Table table_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return table_from_json(parse_json(text));
  return table_from_csv(text);
}

json to_json(const Table& t) {
  return {{"rows", t.shape.rows()},
          {"cols", t.shape.cols()},
          {"counts", t.counts.counts()},
          {"row_labels", t.row_labels},
          {"col_labels", t.col_labels}};
}

json to_json(const BiasEstimate& e) {
  return {{"estimate", e.estimate},
          {"std_error", e.std_error},
          {"conditioning_draws", e.conditioning_draws},
          {"raw_draws", e.raw_draws}};
}

json to_json(const BiasReport& r) {
  return {{"against", to_json(r.against)},
          {"in_favor", to_json(r.in_favor)},
          {"delta", r.delta},
          {"prior_content_h0", r.prior_content_h0},
          {"outer_draws", r.outer_draws},
          {"posterior_draws", r.posterior_draws},
          {"n", r.n},
          {"seed", r.seed}};
}

json to_json(const ConflictReport& r, std::uint64_t seed) {
  return {{"p_value", r.p_value},
          {"std_error", r.std_error},
          {"draws", r.draws},
          {"observed_log_m", r.observed_log_m},
          {"seed", seed}};
}

json to_json(const DeflationResult& r) {
  return {{"prior", to_json(r.prior)},
          {"conflict", to_json(r.conflict, 0)},
          {"steps", trace_json(r.steps, "p_value")},
          {"deflated", r.deflated}};
}

json to_json(const RBAnalysis& a) {
  json rb = json::array();
  for (const auto& v : a.rb) rb.push_back(v ? json(*v) : json(nullptr));
  return {{"delta", a.grid.delta()},
          {"bins", a.grid.bins()},
          {"prior_counts", a.prior_counts},
          {"posterior_counts", a.posterior_counts},
          {"prior_content", a.prior_content},
          {"posterior_content", a.posterior_content},
          {"rb", rb},
          {"prior_draws", a.prior_draws},
          {"posterior_draws", a.posterior_draws}};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::EvidenceInFavor: return "evidence in favor";
    case Verdict::EvidenceAgainst: return "evidence against";
    case Verdict::NoEvidence: return "no evidence";
  }
  return "no evidence";
}

json to_json(const HypothesisAssessment& h) {
  return {{"h0_bin", h.h0_bin},
          {"rb", h.rb_at_h0},
          {"strength", h.strength},
          {"verdict", to_string(h.verdict)}};
}

json to_json(const InferenceReport& r) {
  return {{"analysis", to_json(r.analysis)},
          {"assessment", to_json(r.assessment)},
          {"rb", r.assessment.rb_at_h0},
          {"strength", r.assessment.strength},
          {"verdict", to_string(r.assessment.verdict)},
          {"estimate_bin", r.estimate_bin},
          {"chi_squared",
           {{"statistic", r.chi_squared.statistic},
            {"df", r.chi_squared.degrees_of_freedom},
            {"p_value", r.chi_squared.p_value}}},
          {"raw_psi", r.raw_psi},
          {"seed", r.seed}};
}

}  // namespace dirprior::app
