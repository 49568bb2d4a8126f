#include "dirprior/prior_checks.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "dirprior/error.hpp"

namespace dirprior {
namespace {

constexpr double kLogTieSlack = 1e-9;

enum class BiasKind { Against, InFavor };

// Runs body(i) for i in [0, count) on `threads` workers; each index writes
// only its own output slot, so results are independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([=, &body] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
}

double prior_content_h0(const DirichletParams& prior, const ContingencyShape& shape,
                        double delta, const BiasConfig& cfg, Rng& rng) {
  if (cfg.prior_content) {
    if (cfg.prior_content->empty()) {
      throw Error(ErrorCode::InvalidInput, "empty prior content vector");
    }
    return cfg.prior_content->front();
  }
  const DiscretizationGrid grid(delta, 2);
  return psi_bin_contents(prior, shape, grid, cfg.prior_content_draws, rng).front();
}

BiasEstimate estimate_bias(BiasKind kind, const DirichletParams& prior,
                           const ContingencyShape& shape, double delta,
                           const BiasConfig& cfg, double content_h0, Rng& rng) {
  cfg.validate();
  if (prior.k() != shape.cells()) {
    throw Error(ErrorCode::DimensionMismatch, "prior size does not match table");
  }
  if (!(content_h0 > 0.0)) {
    throw Error(ErrorCode::UndefinedRB,
                "prior content of [0, delta) is zero; RB undefined");
  }
  const double lo = kind == BiasKind::Against ? 0.0 : delta;
  const double hi = kind == BiasKind::Against ? delta : 2.0 * delta;

  // Rejection sampling of conditioning draws from the prior.
  const std::size_t budget = cfg.budget_factor * cfg.outer_draws;
  std::vector<std::vector<double>> conditioning;
  conditioning.reserve(cfg.outer_draws);
  std::size_t raw = 0;
  std::vector<double> p(prior.k());
  while (conditioning.size() < cfg.outer_draws) {
    if (raw >= budget) {
      throw Error(ErrorCode::ConditioningStarvation,
                  "only " + std::to_string(conditioning.size()) + " of " +
                      std::to_string(cfg.outer_draws) + " prior draws fell in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ") after " +
                      std::to_string(raw) + " attempts");
    }
    sample_into(prior, rng, p);
    ++raw;
    const double psi = kl_independence_psi(p, shape);
    if (psi >= lo && psi < hi) conditioning.push_back(p);
  }

  const Rng tasks = rng.substream(rng.next_u64());
  std::vector<char> success(conditioning.size(), 0);
  parallel_for(conditioning.size(), cfg.threads, [&](std::size_t i) {
    Rng local = tasks.substream(i);
    const CountVector data = multinomial_sample(cfg.n, conditioning[i], local);
    const DirichletParams posterior = posterior_update(prior, data);
    std::vector<double> q(prior.k());
    std::size_t inside = 0;
    for (std::size_t s = 0; s < cfg.posterior_draws; ++s) {
      sample_into(posterior, local, q);
      if (kl_independence_psi(q, shape) < delta) ++inside;
    }
    const double rb = (static_cast<double>(inside) /
                       static_cast<double>(cfg.posterior_draws)) / content_h0;
    success[i] = kind == BiasKind::Against ? (rb <= 1.0) : (rb >= 1.0);
  });

  BiasEstimate out;
  out.conditioning_draws = conditioning.size();
  out.raw_draws = raw;
  const auto hits = static_cast<double>(std::count(success.begin(), success.end(), 1));
  const auto m = static_cast<double>(conditioning.size());
  out.estimate = hits / m;
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / m);
  return out;
}

}  // namespace

void BiasConfig::validate() const {
  if (outer_draws == 0 || posterior_draws == 0 || prior_content_draws == 0 ||
      budget_factor == 0) {
    throw Error(ErrorCode::InvalidInput, "bias budgets must be >= 1");
  }
  if (n < 1) throw Error(ErrorCode::InvalidInput, "synthetic sample size must be >= 1");
}

BiasEstimate bias_against(const DirichletParams& prior,
                          const ContingencyShape& shape, double delta,
                          const BiasConfig& cfg, Rng& rng) {
  cfg.validate();
  const double h0 = prior_content_h0(prior, shape, delta, cfg, rng);
  return estimate_bias(BiasKind::Against, prior, shape, delta, cfg, h0, rng);
}

BiasEstimate bias_in_favor(const DirichletParams& prior,
                           const ContingencyShape& shape, double delta,
                           const BiasConfig& cfg, Rng& rng) {
  cfg.validate();
  const double h0 = prior_content_h0(prior, shape, delta, cfg, rng);
  return estimate_bias(BiasKind::InFavor, prior, shape, delta, cfg, h0, rng);
}

BiasReport bias_report(const DirichletParams& prior, const ContingencyShape& shape,
                       double delta, BiasConfig cfg, Rng& rng) {
  cfg.validate();
  auto progress = [&](double fraction) {
    if (cfg.on_progress) cfg.on_progress(fraction);
  };
  const double h0 = prior_content_h0(prior, shape, delta, cfg, rng);
  cfg.prior_content = std::vector<double>{h0};
  progress(0.1);
  BiasReport report;
  report.delta = delta;
  report.prior_content_h0 = h0;
  report.outer_draws = cfg.outer_draws;
  report.posterior_draws = cfg.posterior_draws;
  report.n = cfg.n;
  report.seed = rng.seed();
  report.against = estimate_bias(BiasKind::Against, prior, shape, delta, cfg, h0, rng);
  progress(0.55);
  report.in_favor = estimate_bias(BiasKind::InFavor, prior, shape, delta, cfg, h0, rng);
  progress(1.0);
  return report;
}

ConflictReport conflict_pvalue(const DirichletParams& prior,
                               const CountVector& f_obs, std::size_t draws,
                               Rng& rng) {
  if (draws == 0) throw Error(ErrorCode::InvalidInput, "need at least one draw");
  if (prior.k() != f_obs.k()) {
    throw Error(ErrorCode::DimensionMismatch, "prior size does not match counts");
  }
  ConflictReport out;
  out.draws = draws;
  out.observed_log_m = log_dirichlet_multinomial(prior, f_obs);
  std::vector<double> p(prior.k());
  std::size_t tail = 0;
  for (std::size_t s = 0; s < draws; ++s) {
    sample_into(prior, rng, p);
    const CountVector simulated = multinomial_sample(f_obs.total(), p, rng);
    if (log_dirichlet_multinomial(prior, simulated) <= out.observed_log_m + kLogTieSlack) {
      ++tail;
    }
  }
  const auto n = static_cast<double>(draws);
  out.p_value = static_cast<double>(tail) / n;
  out.std_error = std::sqrt(out.p_value * (1.0 - out.p_value) / n);
  return out;
}

}  // namespace dirprior
