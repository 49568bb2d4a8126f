#include "dirprior/app/worked_examples.hpp"

#include <iomanip>
#include <sstream>

#include "dirprior/app/workflow.hpp"

namespace dirprior::app {
namespace {

constexpr std::uint64_t kCheckStream = 11;

const std::vector<std::int64_t> kTable1{983, 679, 134, 383, 416, 84, 2892, 2625, 570};
const std::vector<double> kExample4Alpha{11.03, 11.03, 9.11, 9.11, 9.11,
                                         9.11,  18.71, 18.71, 9.11};

Comparison band(std::string quantity, std::string published, double computed,
                std::optional<double> lo, std::optional<double> hi) {
  return {std::move(quantity), std::move(published), computed, lo, hi};
}

Comparison info(std::string quantity, std::string published, double computed) {
  return {std::move(quantity), std::move(published), computed, std::nullopt, std::nullopt};
}

ExampleRun example1(const ReproduceOptions& opts) {
  ExampleRun run{"example1", {}};
  const SubSimplex region =
      bounds_from_json({{"row_lower", {0.1, 0.0, 0.5}}, {"col_lower", {0.2, 0.2, 0.0}}}).resolve();
  ElicitRequest er;
  er.config.draws = opts.draws ? opts.draws : 1000;
  const ElicitedPrior prior = run_elicit(region, er, opts.seed);

  Table table;
  table.shape = ContingencyShape(3, 3);
  table.counts = CountVector(kTable1);

  const InferenceReport inf = run_infer(prior.params, table, InferRequest{}, opts.seed);
  run.rows.push_back(band("chi-squared statistic", "40.54", inf.chi_squared.statistic, 40.53, 40.55));
  run.rows.push_back(band("chi-squared p-value", "0.0000", inf.chi_squared.p_value, std::nullopt, 1e-4));
  run.rows.push_back(band("raw-frequency psi", "0.002", inf.raw_psi, 0.0015, 0.0025));
  run.rows.push_back(info("elicited tau", "96", prior.mode_scale.tau));
  run.rows.push_back(band("prior content [0, d)", "0.14", inf.analysis.prior_content[0], 0.11, 0.17));
  run.rows.push_back(band("prior content [d, 2d)", "0.25", inf.analysis.prior_content[1], 0.22, 0.28));
  run.rows.push_back(band("RB at [0, d)", "7.13", inf.assessment.rb_at_h0, 6.13, 8.13));
  run.rows.push_back(band("strength", "1", inf.assessment.strength, 1.0, 1.0));

  BiasRequest br;
  br.config.n = table.counts.total();
  const json bias = run_bias(prior.params, table.shape, br, opts.seed);
  run.rows.push_back(band("bias in favor", "0.12", bias["in_favor"]["estimate"], 0.07, 0.17));
  run.rows.push_back(band("bias against", "0.02", bias["against"]["estimate"], -0.03, 0.07));

  const json conflict = run_check(prior, region, table, CheckRequest{}, opts.seed);
  run.rows.push_back(band("conflict p-value", "approx. 1", conflict["p_value"], 0.95, std::nullopt));
  return run;
}

ExampleRun example2(const ReproduceOptions& opts) {
  ExampleRun run{"example2", {}};
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.25, 0.25});
  ElicitRequest er;
  const ElicitedPrior coarse = run_elicit(region, er, opts.seed);
  run.rows.push_back(band("tau (epsilon 0.005)", "22.0", coarse.mode_scale.tau, 21.0, 23.0));
  run.rows.push_back(info("content evaluations", "7", coarse.iterations));
  er.config.epsilon = 0.001;
  const ElicitedPrior fine = run_elicit(region, er, opts.seed);
  run.rows.push_back(band("tau (epsilon 0.001)", "22.04", fine.mode_scale.tau, 21.9, 22.2));
  const double content = interval_probability_beta(DirichletParams({12.0, 12.0}), 0.25, 0.75);
  run.rows.push_back(band("content at alpha (12, 12)", "0.993", content, 0.9925, 0.9935));
  return run;
}

ExampleRun example3(const ReproduceOptions& opts) {
  ExampleRun run{"example3", {}};
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.2, 0.2, 0.3, 0.2});
  ElicitRequest er;
  er.config.draws = opts.draws ? opts.draws : 10000;
  const ElicitedPrior p = run_elicit(region, er, opts.seed);
  run.rows.push_back(band("tau", "2560", p.mode_scale.tau, 2200.0, 2900.0));
  run.rows.push_back(band("achieved content", "0.989", p.achieved_content, 0.985, 0.995));
  run.rows.push_back(info("content evaluations", "13", p.iterations));
  Rng rng(opts.seed, kCheckStream);
  const ContentEstimate c = content_estimate(DirichletParams({577.0, 577.0, 833.0, 577.0}),
                                             region, er.config.draws, rng);
  run.rows.push_back(band("content at reference alpha", "0.989", c.estimate, 0.984, 0.994));
  return run;
}

ExampleRun example4(const ReproduceOptions& opts) {
  ExampleRun run{"example4", {}};
  const SubSimplex region = from_lower_bounds(
      std::vector<double>{0.02, 0.02, 0.0, 0.0, 0.0, 0.0, 0.10, 0.10, 0.0});
  ElicitRequest er;
  er.config.draws = opts.draws ? opts.draws : 10000;
  const ElicitedPrior p = run_elicit(region, er, opts.seed);
  run.rows.push_back(band("tau", "96", p.mode_scale.tau, 80.0, 115.0));
  run.rows.push_back(info("achieved content", "0.987", p.achieved_content));
  run.rows.push_back(info("content evaluations", "7", p.iterations));
  Rng rng(opts.seed, kCheckStream);
  const ContentEstimate c =
      content_estimate(DirichletParams(kExample4Alpha), region, er.config.draws, rng);
  run.rows.push_back(band("content at reference alpha", "0.987", c.estimate, 0.982, 0.992));
  return run;
}

}  // namespace

bool Comparison::pass() const noexcept {
  if (lo && computed < *lo) return false;
  if (hi && computed > *hi) return false;
  return true;
}

bool ExampleRun::pass() const noexcept {
  for (const auto& r : rows) {
    if (!r.pass()) return false;
  }
  return true;
}

ExampleRun reproduce(const std::string& name, const ReproduceOptions& opts) {
  if (name == "example1") return example1(opts);
  if (name == "example2") return example2(opts);
  if (name == "example3") return example3(opts);
  if (name == "example4") return example4(opts);
  throw Error(ErrorCode::InvalidInput,
              "unknown example '" + name + "' (expected example1 .. example4)");
}

void print_comparison(const ExampleRun& run, std::ostream& out) {
  auto range = [](const Comparison& c) {
    if (!c.banded()) return std::string("-");
    std::ostringstream s;
    s << "[" << (c.lo ? std::to_string(*c.lo) : std::string("-inf")) << ", "
      << (c.hi ? std::to_string(*c.hi) : std::string("inf")) << "]";
    return s.str();
  };
  out << run.name << "\n";
  out << std::left << std::setw(30) << "quantity" << std::setw(12) << "reference"
      << std::setw(16) << "computed" << std::setw(30) << "accept" << "status\n";
  for (const auto& r : run.rows) {
    std::ostringstream v;
    v << std::setprecision(6) << r.computed;
    out << std::left << std::setw(30) << r.quantity << std::setw(12) << r.published
        << std::setw(16) << v.str() << std::setw(30) << range(r)
        << (!r.banded() ? "info" : r.pass() ? "ok" : "MISMATCH") << "\n";
  }
  out << (run.pass() ? "all banded quantities agree" : "mismatch against reference values")
      << "\n";
}

}  // namespace dirprior::app
