#include "dirprior/elicitation.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "dirprior/error.hpp"

namespace dirprior {
namespace {

std::vector<double> checked_mode(const SubSimplex& region,
                                 std::optional<std::vector<double>> xi) {
  if (!xi) return region.centroid();
  if (xi->size() != region.k()) {
    throw Error(ErrorCode::DimensionMismatch, "mode has the wrong dimension");
  }
  const double total = std::accumulate(xi->begin(), xi->end(), 0.0);
  if (std::abs(total - 1.0) > kMembershipTolerance) {
    throw Error(ErrorCode::InvalidMode, "mode coordinates must sum to 1");
  }
  for (std::size_t i = 0; i < region.k(); ++i) {
    const double v = (*xi)[i];
    if (!(v > region.lower()[i] && v < region.upper()[i])) {
      std::ostringstream msg;
      msg << "mode coordinate " << (i + 1) << " = " << v
          << " is not strictly inside (" << region.lower()[i] << ", "
          << region.upper()[i] << ")";
      throw Error(ErrorCode::InvalidMode, msg.str(), "", i);
    }
  }
  for (double& v : *xi) v /= total;
  return *std::move(xi);
}

ContentEstimate uniform_content(const SubSimplex& region) {
  ContentEstimate c;
  c.estimate = region.k() == 2 ? region.upper()[0] - region.lower()[0]
                               : region.uniform_content();
  return c;
}

}  // namespace

void ElicitationConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < gamma && gamma < 1.0)) {
    throw Error(ErrorCode::InvalidInput,
                "elicitation needs 0 < epsilon < gamma < 1");
  }
  if (draws < 1) throw Error(ErrorCode::InvalidInput, "draws must be >= 1");
  if (max_iterations < 1) {
    throw Error(ErrorCode::InvalidInput, "max_iterations must be >= 1");
  }
  if (!(tau_cap >= 1.0)) throw Error(ErrorCode::InvalidInput, "tau_cap must be >= 1");
}

ContentEstimate region_content(const SubSimplex& region, const std::vector<double>& xi,
                               double tau, std::size_t draws, Rng& rng) {
  if (tau == 0.0) return uniform_content(region);
  const DirichletParams d = params_from_mode_scale({xi, tau});
  if (region.k() == 2) {
    ContentEstimate c;
    c.estimate =
        interval_probability_beta(d, region.lower()[0], region.upper()[0]);
    return c;
  }
  return content_estimate(d, region, draws, rng);
}

ElicitedPrior elicit(const SubSimplex& region, std::optional<std::vector<double>> xi,
                     const ElicitationConfig& cfg, Rng& rng) {
  cfg.validate();
  ElicitedPrior out;
  out.mode_scale.xi = checked_mode(region, std::move(xi));
  const std::vector<double>& mode = out.mode_scale.xi;

  auto finish = [&](double tau, const ContentEstimate& c) {
    out.mode_scale.tau = tau;
    out.params = params_from_mode_scale(out.mode_scale);
    out.achieved_content = c.estimate;
    out.content_std_error = c.std_error;
    return out;
  };

  const ContentEstimate at_uniform = uniform_content(region);
  out.trace.push_back({0.0, at_uniform.estimate});
  if (at_uniform.estimate >= cfg.gamma) {
    out.uniform_sufficient = true;
    return finish(0.0, at_uniform);
  }

  auto evaluate = [&](double tau) {
    if (out.iterations >= cfg.max_iterations) {
      throw Error(ErrorCode::NoConvergence,
                  "no tau within epsilon after " +
                      std::to_string(cfg.max_iterations) + " content evaluations");
    }
    ++out.iterations;
    const ContentEstimate c = region_content(region, mode, tau, cfg.draws, rng);
    out.trace.push_back({tau, c.estimate});
    return c;
  };
  auto within = [&](const ContentEstimate& c) {
    return std::abs(c.estimate - cfg.gamma) <= cfg.epsilon;
  };

  double lo = 0.0;
  double hi = 1.0;
  ContentEstimate c = evaluate(hi);
  while (c.estimate < cfg.gamma) {
    lo = hi;
    hi *= 2.0;
    if (hi > cfg.tau_cap) {
      throw Error(ErrorCode::NoConvergence,
                  "content stays below gamma up to the tau cap");
    }
    c = evaluate(hi);
  }

  // Only bisection midpoints are accepted; doubling probes just bracket.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    c = evaluate(mid);
    if (within(c)) return finish(mid, c);
    if (c.estimate < cfg.gamma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

DeflationResult deflate_for_conflict(const ElicitedPrior& prior,
                                     const SubSimplex& region,
                                     const CountVector& f,
                                     const DeflationConfig& cfg, Rng& rng) {
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "conflict threshold must be in (0,1)");
  }
  DeflationResult out;
  out.prior = prior;
  out.conflict = conflict_pvalue(prior.params, f, cfg.conflict_draws, rng);
  out.steps.push_back({prior.mode_scale.tau, out.conflict.p_value});
  if (out.conflict.p_value >= cfg.threshold) return out;

  const std::vector<double>& mode = prior.mode_scale.xi;
  double tau = prior.mode_scale.tau;
  for (;;) {
    tau *= 0.5;
    const DirichletParams params = params_from_mode_scale({mode, tau});
    out.conflict = conflict_pvalue(params, f, cfg.conflict_draws, rng);
    out.steps.push_back({tau, out.conflict.p_value});
    if (out.conflict.p_value >= cfg.threshold) break;
    if (tau < 1.0) {
      throw Error(ErrorCode::NoConvergence,
                  "prior-data conflict persists for a near-uniform prior; "
                  "check the data");
    }
  }
  const ContentEstimate c = region_content(region, mode, tau, cfg.content_draws, rng);
  out.prior.params = params_from_mode_scale({mode, tau});
  out.prior.mode_scale.tau = tau;
  out.prior.achieved_content = c.estimate;
  out.prior.content_std_error = c.std_error;
  out.prior.uniform_sufficient = false;
  out.deflated = true;
  return out;
}

}  // namespace dirprior
