#include "dirprior/app/workflow.hpp"

#include <cmath>

namespace dirprior::app {
namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be >= 1");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidInput, "delta must be positive");
  }
}

void require_table_match(const DirichletParams& prior, const Table& data) {
  if (prior.k() != data.shape.cells()) {
    throw Error(ErrorCode::DimensionMismatch,
                "prior has " + std::to_string(prior.k()) + " cells but the table has " +
                    std::to_string(data.shape.cells()));
  }
}

}  // namespace

Rng stage_rng(std::uint64_t seed, StageStream stage) {
  return Rng(seed, static_cast<std::uint64_t>(stage));
}

ElicitRequest ElicitRequest::from_json(const json& j) {
  ElicitRequest r;
  r.config.gamma = value_or(j, "gamma", r.config.gamma);
  r.config.epsilon = value_or(j, "epsilon", r.config.epsilon);
  r.config.draws = value_or(j, "draws", r.config.draws);
  r.config.max_iterations = value_or(j, "max_iterations", r.config.max_iterations);
  if (j.is_object() && j.contains("mode") && !j.at("mode").is_null()) {
    r.mode = value_or<std::vector<double>>(j, "mode", {});
  }
  r.config.validate();
  return r;
}

BiasRequest BiasRequest::from_json(const json& j) {
  BiasRequest r;
  r.delta = value_or(j, "delta", r.delta);
  r.config.outer_draws = value_or(j, "outer_draws", r.config.outer_draws);
  r.config.posterior_draws = value_or(j, "posterior_draws", r.config.posterior_draws);
  r.config.prior_content_draws =
      value_or(j, "prior_content_draws", r.config.prior_content_draws);
  r.config.n = value_or<std::int64_t>(j, "n", 0);
  r.config.budget_factor = value_or(j, "budget_factor", r.config.budget_factor);
  r.config.threads = value_or(j, "threads", r.config.threads);
  r.delta_sweep = value_or<std::vector<double>>(j, "delta_sweep", {});
  require_delta(r.delta);
  for (double d : r.delta_sweep) require_delta(d);
  return r;
}

CheckRequest CheckRequest::from_json(const json& j) {
  CheckRequest r;
  r.draws = value_or(j, "draws", r.draws);
  r.deflate = value_or(j, "deflate", r.deflate);
  r.deflation.threshold = value_or(j, "threshold", r.deflation.threshold);
  r.deflation.conflict_draws = r.draws;
  r.deflation.content_draws = value_or(j, "content_draws", r.deflation.content_draws);
  require_positive(r.draws, "draws");
  return r;
}

InferRequest InferRequest::from_json(const json& j) {
  InferRequest r;
  if (j.is_object() && j.contains("draws")) {
    r.prior_draws = r.posterior_draws = value_or<std::size_t>(j, "draws", 0);
  }
  r.delta = value_or(j, "delta", r.delta);
  r.prior_draws = value_or(j, "prior_draws", r.prior_draws);
  r.posterior_draws = value_or(j, "posterior_draws", r.posterior_draws);
  require_delta(r.delta);
  require_positive(r.prior_draws, "prior_draws");
  require_positive(r.posterior_draws, "posterior_draws");
  return r;
}

ElicitedPrior run_elicit(const SubSimplex& region, const ElicitRequest& req,
                         std::uint64_t seed) {
  Rng rng = stage_rng(seed, StageStream::Elicit);
  return elicit(region, req.mode, req.config, rng);
}

json run_bias(const DirichletParams& prior, const ContingencyShape& shape,
              const BiasRequest& req, std::uint64_t seed,
              std::function<void(double)> on_progress) {
  BiasConfig cfg = req.config;
  cfg.on_progress = std::move(on_progress);
  Rng rng = stage_rng(seed, StageStream::Bias);
  json out = to_json(bias_report(prior, shape, req.delta, cfg, rng));
  if (!req.delta_sweep.empty()) {
    json sweep = json::array();
    cfg.on_progress = {};
    for (std::size_t i = 0; i < req.delta_sweep.size(); ++i) {
      Rng sub = rng.substream(i);
      sweep.push_back(to_json(bias_report(prior, shape, req.delta_sweep[i], cfg, sub)));
    }
    out["sweep"] = sweep;
  }
  return out;
}

json run_check(const ElicitedPrior& prior, const std::optional<SubSimplex>& region,
               const Table& data, const CheckRequest& req, std::uint64_t seed) {
  require_table_match(prior.params, data);
  Rng rng = stage_rng(seed, StageStream::Check);
  if (req.deflate) {
    if (!region) {
      throw Error(ErrorCode::InvalidInput, "deflation needs the elicitation region (bounds)");
    }
    const DeflationResult d = deflate_for_conflict(prior, *region, data.counts, req.deflation, rng);
    json out = to_json(d.conflict, seed);
    out["deflation"] = to_json(d);
    return out;
  }
  return to_json(conflict_pvalue(prior.params, data.counts, req.draws, rng), seed);
}

InferenceReport run_infer(const DirichletParams& prior, const Table& data,
                          const InferRequest& req, std::uint64_t seed) {
  require_table_match(prior, data);
  Rng rng = stage_rng(seed, StageStream::Infer);
  InferenceReport r;
  r.seed = seed;
  r.analysis = rb_analysis(prior, data.counts, data.shape, req.delta, req.prior_draws,
                           req.posterior_draws, rng);
  r.assessment = assess_hypothesis(r.analysis, 0);
  r.estimate_bin = rb_estimate(r.analysis);
  r.chi_squared = chi_squared_independence(data.counts, data.shape);
  std::vector<double> freq;
  const auto n = static_cast<double>(data.counts.total());
  for (auto c : data.counts.counts()) freq.push_back(static_cast<double>(c) / n);
  r.raw_psi = kl_independence_psi(freq, data.shape);
  return r;
}

ElicitedPrior prior_from_params(const DirichletParams& params) {
  ElicitedPrior p;
  p.params = params;
  if (params.is_uniform()) {
    p.mode_scale.xi.assign(params.k(), 1.0 / static_cast<double>(params.k()));
    p.mode_scale.tau = 0.0;
  } else {
    p.mode_scale = mode_scale_from_params(params);
  }
  return p;
}

}  // namespace dirprior::app
