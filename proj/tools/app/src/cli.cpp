#include "dirprior/app/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>

#include "dirprior/app/plot_data.hpp"
#include "dirprior/app/service.hpp"
#include "dirprior/app/worked_examples.hpp"
#include "dirprior/app/workflow.hpp"

namespace dirprior::app {
namespace {

struct Options {
  std::uint64_t seed = 1;
  std::string out;
  std::string bounds;
  std::string prior;
  std::string data;
  std::optional<double> gamma;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<std::size_t> draws;
  std::vector<double> mode;
  std::optional<std::size_t> posterior_draws;
  std::optional<std::size_t> prior_content_draws;
  std::optional<std::int64_t> n;
  std::optional<std::size_t> rows;
  std::optional<std::size_t> cols;
  unsigned threads = 1;
  std::vector<double> delta_sweep;
  bool deflate = false;
  std::optional<double> threshold;
  std::string example;
  std::string kind = "marginal-density";
  std::optional<std::size_t> index;
  std::size_t grid_points = 201;
  std::string pairs;
  std::size_t n_points = 300;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string storage = "sessions";
};

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

ElicitedPrior load_prior(const std::string& path) {
  const json j = parse_json(read_file(path));
  if (j.is_object() && j.contains("params") && j.contains("mode")) {
    return elicited_prior_from_json(j);
  }
  return prior_from_params(prior_params_from_json(j));
}

void emit(const json& report, const Options& o, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "wrote " << o.out << "\n";
  }
}

int cmd_elicit(const Options& o, std::ostream& out) {
  const SubSimplex region = bounds_from_json(parse_json(read_file(o.bounds))).resolve();
  json body = json::object();
  put(body, "gamma", o.gamma);
  put(body, "epsilon", o.epsilon);
  put(body, "draws", o.draws);
  if (!o.mode.empty()) body["mode"] = o.mode;
  const ElicitedPrior p = run_elicit(region, ElicitRequest::from_json(body), o.seed);
  emit(to_json(p), o, out);
  return kExitOk;
}

int cmd_bias(const Options& o, std::ostream& out) {
  const ElicitedPrior prior = load_prior(o.prior);
  std::optional<Table> table;
  if (!o.data.empty()) table = table_from_text(read_file(o.data));
  json body = json::object();
  put(body, "delta", o.delta);
  put(body, "outer_draws", o.draws);
  put(body, "posterior_draws", o.posterior_draws);
  put(body, "prior_content_draws", o.prior_content_draws);
  put(body, "n", o.n);
  body["threads"] = o.threads;
  if (!o.delta_sweep.empty()) body["delta_sweep"] = o.delta_sweep;
  BiasRequest br = BiasRequest::from_json(body);
  std::optional<ContingencyShape> shape;
  if (o.rows || o.cols) {
    shape = ContingencyShape(o.rows.value_or(0), o.cols.value_or(0));
  } else if (table) {
    shape = table->shape;
  } else {
    throw Error(ErrorCode::InvalidInput, "bias needs --data or --rows/--cols for the table shape");
  }
  if (br.config.n == 0) {
    if (!table) throw Error(ErrorCode::InvalidInput, "bias needs --n or --data");
    br.config.n = table->counts.total();
  }
  emit(run_bias(prior.params, *shape, br, o.seed), o, out);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const ElicitedPrior prior = load_prior(o.prior);
  const Table table = table_from_text(read_file(o.data));
  std::optional<SubSimplex> region;
  if (!o.bounds.empty()) region = bounds_from_json(parse_json(read_file(o.bounds))).resolve();
  json body = json::object();
  put(body, "draws", o.draws);
  put(body, "threshold", o.threshold);
  body["deflate"] = o.deflate;
  emit(run_check(prior, region, table, CheckRequest::from_json(body), o.seed), o, out);
  return kExitOk;
}

int cmd_infer(const Options& o, std::ostream& out) {
  const ElicitedPrior prior = load_prior(o.prior);
  const Table table = table_from_text(read_file(o.data));
  json body = json::object();
  put(body, "delta", o.delta);
  put(body, "draws", o.draws);
  emit(to_json(run_infer(prior.params, table, InferRequest::from_json(body), o.seed)), o, out);
  return kExitOk;
}

int cmd_plotdata(const Options& o, std::ostream& out) {
  const ElicitedPrior prior = load_prior(o.prior);
  Rng rng = stage_rng(o.seed, StageStream::Plot);
  PlotData plot;
  switch (plot_kind_from_string(o.kind)) {
    case PlotKind::MarginalDensity:
      plot = o.index ? marginal_density_data(prior.params, *o.index - 1, o.grid_points)
                     : marginal_density_data(prior.params, o.grid_points);
      break;
    case PlotKind::ScatterPairs:
      plot = scatter_pairs_data(prior.params, parse_pairs(o.pairs, prior.params.k()),
                                o.n_points, rng);
      break;
    case PlotKind::PsiHistogram: {
      if (o.data.empty()) throw Error(ErrorCode::InvalidInput, "psi-histogram needs --data");
      const Table table = table_from_text(read_file(o.data));
      const InferRequest ir = InferRequest::from_json(
          {{"delta", o.delta.value_or(0.01)}, {"draws", o.draws.value_or(10000)}});
      const InferenceReport r = run_infer(prior.params, table, ir, o.seed);
      plot = psi_histogram_data(r.analysis.prior_content, ir.delta);
      break;
    }
  }
  emit(plot.to_json(), o, out);
  return kExitOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  ReproduceOptions ro;
  ro.seed = o.seed;
  ro.draws = o.draws.value_or(0);
  const ExampleRun run = reproduce(o.example, ro);
  print_comparison(run, out);
  return run.pass() ? kExitOk : kExitMismatch;
}

int cmd_serve(const Options& o, std::ostream& out) {
  ServiceConfig cfg;
  cfg.storage_dir = o.storage;
  cfg.host = o.host;
  cfg.port = o.port;
  cfg.default_seed = o.seed;
  Service service(cfg);
  const int port = service.bind();
  out << "serving on http://" << o.host << ":" << port << " (sessions in " << o.storage << ")"
      << std::endl;
  service.listen();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dirichlet prior elicitation, bias and conflict checks, and relative-belief "
               "inference for contingency tables"};
  app.name("dirprior");
  app.require_subcommand(1);

  auto seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Random seed")->capture_default_str(); };
  auto output = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the JSON report here"); };

  CLI::App* elicit = app.add_subcommand("elicit", "Elicit a Dirichlet prior from bounds");
  elicit->add_option("--bounds", o.bounds, "Bounds JSON file")->required();
  elicit->add_option("--gamma", o.gamma, "Target content of the region");
  elicit->add_option("--epsilon", o.epsilon, "Content tolerance");
  elicit->add_option("--draws", o.draws, "Monte Carlo draws per content evaluation");
  elicit->add_option("--mode", o.mode, "Mode override, comma separated")->delimiter(',');
  seed(elicit);
  output(elicit);

  CLI::App* bias = app.add_subcommand("bias", "Bias against and in favor of independence");
  bias->add_option("--prior", o.prior, "Prior JSON file")->required();
  bias->add_option("--data", o.data, "Table (CSV or JSON); sets shape and n");
  bias->add_option("--rows", o.rows, "Table rows when no data is given");
  bias->add_option("--cols", o.cols, "Table columns when no data is given");
  bias->add_option("--n", o.n, "Synthetic sample size");
  bias->add_option("--delta", o.delta, "Practical-significance width");
  bias->add_option("--draws", o.draws, "Conditioning draws");
  bias->add_option("--posterior-draws", o.posterior_draws, "Posterior draws per dataset");
  bias->add_option("--prior-content-draws", o.prior_content_draws, "Draws for the prior content");
  bias->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  bias->add_option("--delta-sweep", o.delta_sweep, "Extra deltas, comma separated")->delimiter(',');
  seed(bias);
  output(bias);

  CLI::App* check = app.add_subcommand("check", "Prior-data conflict check");
  check->add_option("--prior", o.prior, "Prior JSON file")->required();
  check->add_option("--data", o.data, "Table (CSV or JSON)")->required();
  check->add_option("--draws", o.draws, "Prior predictive draws");
  check->add_flag("--deflate", o.deflate, "Halve tau until the conflict clears");
  check->add_option("--threshold", o.threshold, "Smallest acceptable p-value");
  check->add_option("--bounds", o.bounds, "Bounds JSON (needed with --deflate)");
  seed(check);
  output(check);

  CLI::App* infer = app.add_subcommand("infer", "Relative-belief inference on independence");
  infer->add_option("--prior", o.prior, "Prior JSON file")->required();
  infer->add_option("--data", o.data, "Table (CSV or JSON)")->required();
  infer->add_option("--delta", o.delta, "Practical-significance width");
  infer->add_option("--draws", o.draws, "Prior and posterior draws");
  seed(infer);
  output(infer);

  CLI::App* repro = app.add_subcommand("reproduce", "Run a worked example against reference values");
  repro->add_option("example", o.example, "example1 | example2 | example3 | example4")->required();
  repro->add_option("--draws", o.draws, "Monte Carlo draws per content evaluation");
  seed(repro);

  CLI::App* plot = app.add_subcommand("plotdata", "Emit plot data series as JSON");
  plot->add_option("--prior", o.prior, "Prior JSON file")->required();
  plot->add_option("--kind", o.kind, "marginal-density | scatter-pairs | psi-histogram")
      ->capture_default_str();
  plot->add_option("--index", o.index, "Coordinate (1-based) for a single marginal");
  plot->add_option("--grid-points", o.grid_points, "Grid size for densities")->capture_default_str();
  plot->add_option("--pairs", o.pairs, "Scatter pairs, e.g. 1-2,1-3");
  plot->add_option("--n-points", o.n_points, "Scatter sample size")->capture_default_str();
  plot->add_option("--data", o.data, "Table for the psi histogram");
  plot->add_option("--delta", o.delta, "Histogram bin width");
  plot->add_option("--draws", o.draws, "Prior draws for the psi histogram");
  seed(plot);
  output(plot);

  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", o.port, "Port (0 picks one)")->capture_default_str();
  serve->add_option("--host", o.host, "Listen address")->capture_default_str();
  serve->add_option("--storage", o.storage, "Session directory")->capture_default_str();
  seed(serve);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*elicit) return cmd_elicit(o, out);
    if (*bias) return cmd_bias(o, out);
    if (*check) return cmd_check(o, out);
    if (*infer) return cmd_infer(o, out);
    if (*repro) return cmd_reproduce(o, out);
    if (*plot) return cmd_plotdata(o, out);
    if (*serve) return cmd_serve(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (!e.inequality().empty()) err << " [" << e.inequality() << "]";
    err << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace dirprior::app
