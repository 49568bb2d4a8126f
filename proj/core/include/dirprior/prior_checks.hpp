#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dirprior/dirichlet.hpp"
#include "dirprior/random.hpp"
#include "dirprior/relative_belief.hpp"

namespace dirprior {

struct BiasConfig {
  /// Conditioning draws (prior samples with psi in the conditioning bin).
  std::size_t outer_draws = 200;
  /// Posterior samples per synthetic dataset.
  std::size_t posterior_draws = 1000;
  /// Prior psi bin contents on the delta grid; estimated with
  /// `prior_content_draws` samples when absent.
  std::optional<std::vector<double>> prior_content;
  std::size_t prior_content_draws = 10000;
  /// Size of each synthetic dataset.
  std::int64_t n = 0;
  /// Raw prior draws allowed per requested conditioning draw.
  std::size_t budget_factor = 100;
  /// Worker threads for the per-dataset loop; results do not depend on it.
  unsigned threads = 1;
  /// Called by bias_report with the completed fraction after each stage.
  std::function<void(double)> on_progress;

  void validate() const;
};

struct BiasEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t conditioning_draws = 0;
  std::size_t raw_draws = 0;
};

struct BiasReport {
  BiasEstimate against;
  BiasEstimate in_favor;
  double delta = 0.0;
  double prior_content_h0 = 0.0;
  std::size_t outer_draws = 0;
  std::size_t posterior_draws = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
};

/// Prior probability that data generated with psi in [0, delta) yields
/// RB([0, delta) | F) <= 1.
BiasEstimate bias_against(const DirichletParams& prior,
                          const ContingencyShape& shape, double delta,
                          const BiasConfig& cfg, Rng& rng);

/// Prior probability that data generated with psi in [delta, 2 delta)
/// yields RB([0, delta) | F) >= 1.
BiasEstimate bias_in_favor(const DirichletParams& prior,
                           const ContingencyShape& shape, double delta,
                           const BiasConfig& cfg, Rng& rng);

/// Both biases with a shared prior-content estimate.
BiasReport bias_report(const DirichletParams& prior, const ContingencyShape& shape,
                       double delta, BiasConfig cfg, Rng& rng);

struct ConflictReport {
  double p_value = 1.0;
  double std_error = 0.0;
  std::size_t draws = 0;
  double observed_log_m = 0.0;
};

/// Tail probability M(m(F) <= m(f_obs)) under the prior predictive, with
/// ties (within 1e-9 in log space) counted as "<=".
ConflictReport conflict_pvalue(const DirichletParams& prior,
                               const CountVector& f_obs, std::size_t draws,
                               Rng& rng);

}  // namespace dirprior
