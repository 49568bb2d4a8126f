#include "dirprior/app/session.hpp"

#include <chrono>
#include <ctime>
#include <random>
#include <stdexcept>

namespace dirprior::app {
namespace {

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string random_id() {
  std::random_device rd;
  std::uniform_int_distribution<int> nibble(0, 15);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 16; ++i) id += kHex[nibble(rd)];
  return id;
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void Session::set_bounds(BoundSpec spec, SubSimplex region) {
  bounds = std::move(spec);
  simplex = std::move(region);
  prior.reset();
  reports = json::object();
  bias_job = {{"state", "idle"}, {"progress", 0.0}};
}

void Session::set_prior(ElicitedPrior p) {
  prior = std::move(p);
  reports = json::object();
  bias_job = {{"state", "idle"}, {"progress", 0.0}};
}

void Session::set_data(Table t) {
  data = std::move(t);
  reports.erase("conflict");
  reports.erase("inference");
}

json Session::to_json() const {
  json j = {{"id", id},
            {"seed", seed},
            {"created", created},
            {"modified", modified},
            {"bounds", bounds ? app::to_json(*bounds) : json(nullptr)},
            {"simplex", simplex ? app::to_json(*simplex) : json(nullptr)},
            {"prior", prior ? app::to_json(*prior) : json(nullptr)},
            {"data", data ? app::to_json(*data) : json(nullptr)},
            {"reports", reports},
            {"bias_job", bias_job}};
  j["stage"] = !simplex ? "new" : !prior ? "bounded" : !data ? "elicited" : "data";
  return j;
}

Session Session::from_json(const json& j) {
  Session s;
  s.id = j.at("id").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.created = j.at("created").get<std::string>();
  s.modified = j.at("modified").get<std::string>();
  if (!j.at("bounds").is_null()) {
    s.bounds = bounds_from_json(j.at("bounds"));
    s.simplex = s.bounds->resolve();
  }
  if (!j.at("prior").is_null()) s.prior = elicited_prior_from_json(j.at("prior"));
  if (!j.at("data").is_null()) s.data = table_from_json(j.at("data"));
  s.reports = j.at("reports");
  s.bias_job = j.at("bias_job");
  return s;
}

SessionStore::SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path SessionStore::path_of(const std::string& id) const {
  if (!valid_id(id)) throw std::out_of_range("unknown session " + id);
  return dir_ / (id + ".json");
}

Session SessionStore::create(std::uint64_t seed) {
  Session s;
  do {
    s.id = random_id();
  } while (exists(s.id));
  s.seed = seed;
  s.created = s.modified = utc_timestamp();
  auto guard = lock(s.id);
  save(s);
  return s;
}

bool SessionStore::exists(const std::string& id) const {
  return valid_id(id) && std::filesystem::exists(dir_ / (id + ".json"));
}

Session SessionStore::load(const std::string& id) const {
  if (!exists(id)) throw std::out_of_range("unknown session " + id);
  return Session::from_json(parse_json(read_file(path_of(id))));
}

void SessionStore::save(Session& s) {
  s.modified = utc_timestamp();
  const auto target = path_of(s.id);
  auto tmp = target;
  tmp += ".tmp";
  write_file(tmp, s.to_json().dump(2));
  std::filesystem::rename(tmp, target);
}

std::unique_lock<std::mutex> SessionStore::lock(const std::string& id) {
  std::shared_ptr<std::mutex> m;
  {
    std::lock_guard<std::mutex> guard(map_mutex_);
    auto& slot = locks_[id];
    if (!slot) slot = std::make_shared<std::mutex>();
    m = slot;
  }
  return std::unique_lock<std::mutex>(*m);
}

}  // namespace dirprior::app
