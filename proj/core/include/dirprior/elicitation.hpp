#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dirprior/bounds.hpp"
#include "dirprior/dirichlet.hpp"
#include "dirprior/prior_checks.hpp"
#include "dirprior/random.hpp"

namespace dirprior {

struct ElicitationConfig {
  /// Target prior content of the region.
  double gamma = 0.99;
  /// Stop when |content - gamma| <= epsilon.
  double epsilon = 0.005;
  /// Monte Carlo draws per content evaluation (k >= 3 only).
  std::size_t draws = 1000;
  /// Limit on content evaluations, bracketing included.
  int max_iterations = 200;
  double tau_cap = 1e8;

  void validate() const;
};

struct TracePoint {
  double tau = 0.0;
  double content = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct ElicitedPrior {
  DirichletParams params = DirichletParams::uniform(2);
  ModeScale mode_scale;
  double achieved_content = 0.0;
  /// Zero when content is exact (k = 2 or the uniform prior).
  double content_std_error = 0.0;
  /// Content evaluations at tau > 0.
  int iterations = 0;
  /// Every evaluated (tau, content), in order, starting with tau = 0.
  std::vector<TracePoint> trace;
  /// The uniform prior already puts at least gamma on the region.
  bool uniform_sufficient = false;
};

/// Content of `region` under Dirichlet(1 + tau xi): exact for k = 2,
/// Monte Carlo with `draws` fresh samples otherwise.
ContentEstimate region_content(const SubSimplex& region, const std::vector<double>& xi,
                               double tau, std::size_t draws, Rng& rng);

/// Finds tau so that Dirichlet(1 + tau xi) puts gamma of its mass on
/// `region`: doubles tau from 1 until the content reaches gamma, then
/// bisects until a midpoint lands within epsilon of gamma. `xi` defaults
/// to the centroid and must lie strictly inside the region.
ElicitedPrior elicit(const SubSimplex& region, std::optional<std::vector<double>> xi,
                     const ElicitationConfig& cfg, Rng& rng);

struct DeflationConfig {
  /// Smallest acceptable conflict p-value.
  double threshold = 0.05;
  std::size_t conflict_draws = 10000;
  /// Used to recompute the content of each deflated prior.
  std::size_t content_draws = 1000;
};

struct DeflationResult {
  ElicitedPrior prior;
  ConflictReport conflict;
  /// (tau', p-value) for each prior checked, starting with the input.
  std::vector<TracePoint> steps;
  bool deflated = false;
};

/// Halves tau (keeping the mode) until the prior-data conflict p-value
/// reaches the threshold. Throws NoConvergence if it still fails once
/// tau' < 1.
DeflationResult deflate_for_conflict(const ElicitedPrior& prior,
                                     const SubSimplex& region,
                                     const CountVector& f,
                                     const DeflationConfig& cfg, Rng& rng);

}  // namespace dirprior
