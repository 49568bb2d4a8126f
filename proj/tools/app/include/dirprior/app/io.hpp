#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirprior/bounds.hpp"
#include "dirprior/dirichlet.hpp"
#include "dirprior/elicitation.hpp"
#include "dirprior/error.hpp"
#include "dirprior/prior_checks.hpp"
#include "dirprior/relative_belief.hpp"

namespace dirprior::app {

using nlohmann::json;

/// Observed r x c table with its labels.
struct Table {
  ContingencyShape shape{2, 2};
  CountVector counts = CountVector::zeros(4);
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

/// Inference outputs bundled for reports and sessions.
struct InferenceReport {
  RBAnalysis analysis;
  HypothesisAssessment assessment;
  std::size_t estimate_bin = 0;
  ChiSquaredResult chi_squared;
  double raw_psi = 0.0;
  std::uint64_t seed = 0;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
/// Parses JSON text; malformed input raises InvalidInput.
json parse_json(const std::string& text);

/// Accepted forms: {"bounds": [{"type": "lower"|"upper", "value": x}, ...]},
/// {"lower": [...]}, or {"row_lower": [...], "col_lower": [...]} for the
/// lower bounds of a table built from its margins. An optional "k" must
/// match the number of bounds.
BoundSpec bounds_from_json(const json& j);
json to_json(const BoundSpec& spec);
json to_json(const SubSimplex& s);

json to_json(const ElicitedPrior& p);
ElicitedPrior elicited_prior_from_json(const json& j);
/// Accepts an ElicitedPrior document or a bare {"alpha": [...]}.
DirichletParams prior_params_from_json(const json& j);

/// Header row of column labels (first cell is the row-label heading),
/// then one row per table row: label followed by non-negative integers.
Table table_from_csv(const std::string& text);
/// {"rows": r, "cols": c, "counts": [...]} row-major, or
/// {"table": [[...], ...]}; labels optional.
Table table_from_json(const json& j);
/// Dispatches on content: JSON if it starts with '{', CSV otherwise.
Table table_from_text(const std::string& text);
json to_json(const Table& t);

json to_json(const BiasEstimate& e);
json to_json(const BiasReport& r);
json to_json(const ConflictReport& r, std::uint64_t seed);
json to_json(const DeflationResult& r);
json to_json(const RBAnalysis& a);
json to_json(const HypothesisAssessment& h);
json to_json(const InferenceReport& r);
std::string to_string(Verdict v);

/// Reads a typed value from a JSON object, falling back to `fallback` when
/// absent; wrong types raise InvalidInput naming the key.
template <typename T>
T value_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace dirprior::app
