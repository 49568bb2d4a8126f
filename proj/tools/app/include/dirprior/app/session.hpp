#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dirprior/app/io.hpp"

namespace dirprior::app {

/// One analysis, persisted as a single JSON file.
struct Session {
  std::string id;
  std::uint64_t seed = 0;
  std::string created;
  std::string modified;
  std::optional<BoundSpec> bounds;
  std::optional<SubSimplex> simplex;
  std::optional<ElicitedPrior> prior;
  std::optional<Table> data;
  /// Stage reports as emitted: "bias", "conflict", "inference".
  json reports = json::object();
  /// Background bias job: {"state": idle|running|done|failed|stale, "progress", "error"}.
  json bias_job = {{"state", "idle"}, {"progress", 0.0}};

  /// Clears everything downstream of the bounds.
  void set_bounds(BoundSpec spec, SubSimplex region);
  /// Clears reports that depend on the prior.
  void set_prior(ElicitedPrior p);
  /// Clears reports that depend on the data.
  void set_data(Table t);

  json to_json() const;
  static Session from_json(const json& j);
};

/// Current UTC time as an ISO-8601 string.
std::string utc_timestamp();

/// Directory of `<id>.json` session files with one mutex per id.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  Session create(std::uint64_t seed);
  bool exists(const std::string& id) const;
  /// Throws std::out_of_range for an unknown id.
  Session load(const std::string& id) const;
  void save(Session& s);
  /// Exclusive access to one session for the duration of a mutation.
  std::unique_lock<std::mutex> lock(const std::string& id);

 private:
  std::filesystem::path path_of(const std::string& id) const;

  std::filesystem::path dir_;
  std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace dirprior::app
