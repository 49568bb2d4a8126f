#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dirprior/bounds.hpp"
#include "dirprior/random.hpp"

namespace dirprior {

/// Dirichlet hyperparameters, restricted to alpha_i >= 1 so the density has
/// no boundary singularities.
class DirichletParams {
 public:
  explicit DirichletParams(std::vector<double> alpha);

  /// Dirichlet(1, ..., 1).
  static DirichletParams uniform(std::size_t k);

  std::size_t k() const noexcept { return alpha_.size(); }
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  double total() const noexcept { return total_; }
  /// Concentration beyond the uniform, sum alpha - k.
  double tau() const noexcept { return total_ - static_cast<double>(k()); }
  bool is_uniform() const noexcept;

  friend bool operator==(const DirichletParams& a, const DirichletParams& b) {
    return a.alpha_ == b.alpha_;
  }

 private:
  std::vector<double> alpha_;
  double total_ = 0.0;
};

/// Mode xi and concentration tau with alpha_i = 1 + tau xi_i.
struct ModeScale {
  std::vector<double> xi;
  double tau = 0.0;

  /// Checks xi is a point of the simplex (sum within 1e-12, xi_i >= 0) and
  /// tau >= 0.
  void validate() const;
};

DirichletParams params_from_mode_scale(const ModeScale& ms);
/// Throws NoUniqueMode for the uniform prior.
ModeScale mode_scale_from_params(const DirichletParams& d);

/// Observed cell counts.
class CountVector {
 public:
  explicit CountVector(std::vector<std::int64_t> counts);
  static CountVector zeros(std::size_t k);

  std::size_t k() const noexcept { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return total_; }

  friend bool operator==(const CountVector& a, const CountVector& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Gamma-normalisation draw from Dirichlet(alpha), written into `out`.
void sample_into(const DirichletParams& d, Rng& rng, std::span<double> out);
std::vector<double> sample(const DirichletParams& d, Rng& rng);

/// Log density; -inf outside the support (including boundary points where
/// the density vanishes).
double log_density(const DirichletParams& d, std::span<const double> p);

/// Pi([l, u]) for p_1 under beta(alpha_1, alpha_2); d must have k = 2.
double interval_probability_beta(const DirichletParams& d, double l, double u);

struct ContentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

/// Fraction of `draws` Dirichlet samples falling in `region`.
ContentEstimate content_estimate(const DirichletParams& d,
                                 const SubSimplex& region, std::size_t draws,
                                 Rng& rng);

DirichletParams posterior_update(const DirichletParams& d, const CountVector& f);

/// log m(f) for the Dirichlet-multinomial prior predictive.
double log_dirichlet_multinomial(const DirichletParams& d, const CountVector& f);

/// Sequential conditional-binomial multinomial(n, p) draw.
CountVector multinomial_sample(std::int64_t n, std::span<const double> p,
                               Rng& rng);

}  // namespace dirprior
