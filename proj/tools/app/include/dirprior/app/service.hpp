#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dirprior/app/session.hpp"

namespace httplib {
class Server;
}

namespace dirprior::app {

struct ServiceConfig {
  std::filesystem::path storage_dir = "sessions";
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  /// Seed given to new sessions unless the create request names one.
  std::uint64_t default_seed = 1;
};

/// HTTP/JSON session service. Requests run concurrently; mutations of one
/// session are serialised through the store's per-session lock.
class Service {
 public:
  explicit Service(ServiceConfig cfg);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket and returns the port actually used.
  int bind();
  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  /// Blocks until background jobs have finished.
  void wait_for_jobs();

  SessionStore& store() noexcept { return store_; }

 private:
  void routes();

  ServiceConfig cfg_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex jobs_mutex_;
  std::vector<std::jthread> jobs_;
};

}  // namespace dirprior::app
