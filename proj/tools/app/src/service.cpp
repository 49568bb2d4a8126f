#include "dirprior/app/service.hpp"

#include <httplib.h>

#include <stdexcept>

#include "dirprior/app/plot_data.hpp"
#include "dirprior/app/workflow.hpp"

namespace dirprior::app {
namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
  json detail = nullptr;
};

[[noreturn]] void stage_error(const std::string& message) {
  throw HttpError{409, "StageOrder", message};
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(const std::string& code, const std::string& message, json detail) {
  return {{"code", code}, {"message", message}, {"detail", std::move(detail)}};
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const HttpError& e) {
    send(res, e.status, error_body(e.code, e.message, e.detail));
  } catch (const Error& e) {
    json detail = json::object();
    if (!e.inequality().empty()) detail["inequality"] = e.inequality();
    if (e.index()) detail["index"] = *e.index();
    send(res, 422, error_body(std::string(to_string(e.code())), e.what(), detail));
  } catch (const std::out_of_range& e) {
    send(res, 404, error_body("NotFound", e.what(), nullptr));
  } catch (const json::exception& e) {
    send(res, 422, error_body("InvalidInput", e.what(), nullptr));
  } catch (const std::exception& e) {
    send(res, 500, error_body("Internal", e.what(), nullptr));
  }
}

json request_json(const httplib::Request& req) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json j = parse_json(req.body);
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "request body must be a JSON object");
  return j;
}

std::size_t query_size(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used == v.size()) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidInput, std::string("query parameter '") + key + "' must be an integer");
}

double query_double(const httplib::Request& req, const char* key, double fallback) {
  if (!req.has_param(key)) return fallback;
  try {
    return std::stod(req.get_param_value(key));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, std::string("query parameter '") + key + "' must be a number");
  }
}

ContingencyShape bias_shape(const Session& s, const json& body) {
  if (body.contains("rows") || body.contains("cols")) {
    return ContingencyShape(value_or<std::size_t>(body, "rows", 0),
                            value_or<std::size_t>(body, "cols", 0));
  }
  if (!s.data) stage_error("bias needs the table shape: upload data or give rows and cols");
  return s.data->shape;
}

}  // namespace

Service::Service(ServiceConfig cfg)
    : cfg_(std::move(cfg)), store_(cfg_.storage_dir), server_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() {
  stop();
  wait_for_jobs();
}

int Service::bind() {
  if (cfg_.port == 0) return server_->bind_to_any_port(cfg_.host);
  if (!server_->bind_to_port(cfg_.host, cfg_.port)) {
    throw std::runtime_error("cannot bind " + cfg_.host + ":" + std::to_string(cfg_.port));
  }
  return cfg_.port;
}

void Service::listen() { server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

void Service::wait_for_jobs() {
  std::vector<std::jthread> done;
  {
    std::lock_guard<std::mutex> guard(jobs_mutex_);
    done.swap(jobs_);
  }
  done.clear();
}

void Service::routes() {
  auto& srv = *server_;
  const std::string id_re = "/sessions/([0-9a-fA-F]+)";

  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = request_json(req);
      const Session s = store_.create(value_or<std::uint64_t>(body, "seed", cfg_.default_seed));
      send(res, 201, s.to_json());
    });
  });

  srv.Get(id_re, [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      send(res, 200, store_.load(id).to_json());
    });
  });

  srv.Put(id_re + "/bounds", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      BoundSpec spec = bounds_from_json(request_json(req));
      SubSimplex region = spec.resolve();
      s.set_bounds(std::move(spec), std::move(region));
      store_.save(s);
      send(res, 200, {{"bounds", to_json(*s.bounds)}, {"simplex", to_json(*s.simplex)}});
    });
  });

  srv.Post(id_re + "/elicit", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      if (!s.simplex) stage_error("elicitation needs bounds first");
      if (s.bias_job.value("state", "") == "running") stage_error("a bias job is running");
      const ElicitRequest er = ElicitRequest::from_json(request_json(req));
      s.set_prior(run_elicit(*s.simplex, er, s.seed));
      store_.save(s);
      send(res, 200, to_json(*s.prior));
    });
  });

  srv.Post(id_re + "/data", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      s.set_data(table_from_text(req.body));
      store_.save(s);
      send(res, 200, to_json(*s.data));
    });
  });

  srv.Post(id_re + "/bias", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      if (!s.prior) stage_error("bias needs an elicited prior");
      if (s.bias_job.value("state", "") == "running") stage_error("a bias job is already running");
      const json body = request_json(req);
      BiasRequest br = BiasRequest::from_json(body);
      const ContingencyShape shape = bias_shape(s, body);
      if (br.config.n == 0) {
        if (!s.data) stage_error("bias needs n or uploaded data");
        br.config.n = s.data->counts.total();
      }
      br.config.validate();
      if (s.prior->params.k() != shape.cells()) {
        throw Error(ErrorCode::DimensionMismatch, "prior size does not match the table shape");
      }
      if (!value_or(body, "async", false)) {
        const json report = run_bias(s.prior->params, shape, br, s.seed);
        s.reports["bias"] = report;
        s.bias_job = {{"state", "done"}, {"progress", 1.0}};
        store_.save(s);
        send(res, 200, report);
        return;
      }
      s.bias_job = {{"state", "running"}, {"progress", 0.0}};
      store_.save(s);
      send(res, 202, s.bias_job);
      const DirichletParams prior = s.prior->params;
      const std::uint64_t seed = s.seed;
      std::lock_guard<std::mutex> jobs_guard(jobs_mutex_);
      jobs_.emplace_back([this, id, prior, shape, br, seed] {
        auto update = [&](const std::function<void(Session&)>& edit) {
          auto g = store_.lock(id);
          Session cur = store_.load(id);
          edit(cur);
          store_.save(cur);
        };
        try {
          const json report = run_bias(prior, shape, br, seed, [&](double f) {
            update([&](Session& cur) {
              if (cur.bias_job.value("state", "") == "running") cur.bias_job["progress"] = f;
            });
          });
          update([&](Session& cur) {
            if (!cur.prior || !(cur.prior->params == prior)) {
              cur.bias_job = {{"state", "stale"}, {"progress", 1.0}};
              return;
            }
            cur.reports["bias"] = report;
            cur.bias_job = {{"state", "done"}, {"progress", 1.0}};
          });
        } catch (const std::exception& e) {
          update([&](Session& cur) {
            cur.bias_job = {{"state", "failed"}, {"progress", 1.0}, {"error", e.what()}};
          });
        }
      });
    });
  });

  srv.Post(id_re + "/check", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      if (!s.prior) stage_error("conflict check needs an elicited prior");
      if (!s.data) stage_error("conflict check needs data");
      const CheckRequest cr = CheckRequest::from_json(request_json(req));
      const json report = run_check(*s.prior, s.simplex, *s.data, cr, s.seed);
      s.reports["conflict"] = report;
      store_.save(s);
      send(res, 200, report);
    });
  });

  srv.Post(id_re + "/infer", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      auto guard = store_.lock(id);
      Session s = store_.load(id);
      if (!s.prior) stage_error("inference needs an elicited prior");
      if (!s.data) stage_error("inference needs data");
      const InferRequest ir = InferRequest::from_json(request_json(req));
      const json report = to_json(run_infer(s.prior->params, *s.data, ir, s.seed));
      s.reports["inference"] = report;
      store_.save(s);
      send(res, 200, report);
    });
  });

  srv.Get(id_re + "/plots/([a-z-]+)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const PlotKind kind = plot_kind_from_string(req.matches[2]);
      Session s = [&] {
        auto guard = store_.lock(id);
        return store_.load(id);
      }();
      if (!s.prior) stage_error("plots need an elicited prior");
      const DirichletParams& prior = s.prior->params;
      Rng rng = stage_rng(s.seed, StageStream::Plot);
      PlotData plot;
      switch (kind) {
        case PlotKind::MarginalDensity: {
          const std::size_t points = query_size(req, "grid_points", 201);
          plot = req.has_param("index")
                     ? marginal_density_data(prior, query_size(req, "index", 1) - 1, points)
                     : marginal_density_data(prior, points);
          break;
        }
        case PlotKind::ScatterPairs:
          plot = scatter_pairs_data(
              prior, parse_pairs(req.has_param("pairs") ? req.get_param_value("pairs") : "", prior.k()),
              query_size(req, "n_points", 300), rng);
          break;
        case PlotKind::PsiHistogram: {
          if (s.reports.contains("inference")) {
            const json& a = s.reports["inference"]["analysis"];
            plot = psi_histogram_data(a["prior_content"].get<std::vector<double>>(),
                                      a["delta"].get<double>());
            break;
          }
          if (!s.data) stage_error("psi histogram needs data (the table shape) or an inference");
          const double delta = query_double(req, "delta", 0.01);
          const std::size_t draws = query_size(req, "draws", 10000);
          if (draws == 0) throw Error(ErrorCode::InvalidInput, "draws must be positive");
          const auto psi = sample_psi(prior, s.data->shape, draws, rng);
          const auto grid = DiscretizationGrid::covering(delta, *std::max_element(psi.begin(), psi.end()));
          std::vector<double> contents(grid.bins(), 0.0);
          for (double v : psi) contents[grid.bin_of(v)] += 1.0 / static_cast<double>(psi.size());
          plot = psi_histogram_data(contents, delta);
          break;
        }
      }
      send(res, 200, plot.to_json());
    });
  });
}

}  // namespace dirprior::app
