#include "dirprior/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dirprior/error.hpp"
#include "dirprior/special_functions.hpp"

namespace dirprior {
namespace {

void require_same_k(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimension " + std::to_string(b) +
                    " does not match k = " + std::to_string(a));
  }
}

}  // namespace

DirichletParams::DirichletParams(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.size() < 2) {
    throw Error(ErrorCode::InvalidParams, "Dirichlet needs k >= 2");
  }
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (!std::isfinite(alpha_[i]) || alpha_[i] < 1.0) {
      throw Error(ErrorCode::InvalidParams,
                  "alpha_" + std::to_string(i + 1) + " must be finite and >= 1",
                  "", i);
    }
  }
  total_ = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

DirichletParams DirichletParams::uniform(std::size_t k) {
  return DirichletParams(std::vector<double>(k, 1.0));
}

bool DirichletParams::is_uniform() const noexcept {
  return std::all_of(alpha_.begin(), alpha_.end(),
                     [](double a) { return a == 1.0; });
}

void ModeScale::validate() const {
  if (xi.size() < 2) throw Error(ErrorCode::InvalidParams, "mode needs k >= 2");
  double total = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!std::isfinite(xi[i]) || xi[i] < 0.0) {
      throw Error(ErrorCode::InvalidParams,
                  "mode coordinate " + std::to_string(i + 1) + " is negative",
                  "", i);
    }
    total += xi[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidParams, "mode coordinates must sum to 1");
  }
  if (!std::isfinite(tau) || tau < 0.0) {
    throw Error(ErrorCode::InvalidParams, "tau must be finite and >= 0");
  }
}

DirichletParams params_from_mode_scale(const ModeScale& ms) {
  ms.validate();
  std::vector<double> alpha(ms.xi.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = 1.0 + ms.tau * ms.xi[i];
  return DirichletParams(std::move(alpha));
}

ModeScale mode_scale_from_params(const DirichletParams& d) {
  const double tau = d.tau();
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::NoUniqueMode,
                "the uniform Dirichlet has no unique mode");
  }
  ModeScale ms;
  ms.tau = tau;
  ms.xi.resize(d.k());
  for (std::size_t i = 0; i < d.k(); ++i) ms.xi[i] = (d.alpha()[i] - 1.0) / tau;
  return ms;
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) throw Error(ErrorCode::InvalidInput, "empty count vector");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw Error(ErrorCode::InvalidInput,
                  "count " + std::to_string(i + 1) + " is negative", "", i);
    }
    total_ += counts_[i];
  }
}

CountVector CountVector::zeros(std::size_t k) {
  return CountVector(std::vector<std::int64_t>(k, 0));
}

void sample_into(const DirichletParams& d, Rng& rng, std::span<double> out) {
  require_same_k(d.k(), out.size(), "sample output");
  double total = 0.0;
  for (std::size_t i = 0; i < d.k(); ++i) {
    out[i] = rng.gamma(d.alpha()[i]);
    total += out[i];
  }
  for (double& v : out) v /= total;
}

std::vector<double> sample(const DirichletParams& d, Rng& rng) {
  std::vector<double> p(d.k());
  sample_into(d, rng, p);
  return p;
}

double log_density(const DirichletParams& d, std::span<const double> p) {
  require_same_k(d.k(), p.size(), "log_density point");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  double kernel = 0.0;
  for (std::size_t i = 0; i < d.k(); ++i) {
    const double pi = p[i];
    const double a = d.alpha()[i];
    if (!(pi >= 0.0)) return kNegInf;
    total += pi;
    if (a == 1.0) continue;
    if (pi == 0.0) return kNegInf;
    kernel += (a - 1.0) * std::log(pi);
  }
  if (std::abs(total - 1.0) > kMembershipTolerance) return kNegInf;
  return kernel - log_multivariate_beta(d.alpha());
}

double interval_probability_beta(const DirichletParams& d, double l, double u) {
  if (d.k() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "interval probability needs a beta (k = 2) prior");
  }
  if (!(l >= 0.0 && l < u && u <= 1.0)) {
    throw Error(ErrorCode::InvalidBounds, "interval needs 0 <= l < u <= 1",
                "range");
  }
  const double a = d.alpha()[0];
  const double b = d.alpha()[1];
  return regularized_incomplete_beta(a, b, u) -
         regularized_incomplete_beta(a, b, l);
}

ContentEstimate content_estimate(const DirichletParams& d,
                                 const SubSimplex& region, std::size_t draws,
                                 Rng& rng) {
  require_same_k(d.k(), region.k(), "content region");
  if (draws == 0) throw Error(ErrorCode::InvalidInput, "need at least one draw");
  std::vector<double> p(d.k());
  std::size_t hits = 0;
  for (std::size_t n = 0; n < draws; ++n) {
    sample_into(d, rng, p);
    if (region.contains(p)) ++hits;
  }
  ContentEstimate out;
  out.draws = draws;
  out.estimate = static_cast<double>(hits) / static_cast<double>(draws);
  out.std_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(draws));
  return out;
}

DirichletParams posterior_update(const DirichletParams& d, const CountVector& f) {
  require_same_k(d.k(), f.k(), "counts");
  std::vector<double> alpha = d.alpha();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    alpha[i] += static_cast<double>(f.counts()[i]);
  }
  return DirichletParams(std::move(alpha));
}

double log_dirichlet_multinomial(const DirichletParams& d, const CountVector& f) {
  require_same_k(d.k(), f.k(), "counts");
  const double n = static_cast<double>(f.total());
  double log_value = std::lgamma(n + 1.0);
  for (std::size_t i = 0; i < d.k(); ++i) {
    const double fi = static_cast<double>(f.counts()[i]);
    const double ai = d.alpha()[i];
    log_value += std::lgamma(ai + fi) - std::lgamma(fi + 1.0) - std::lgamma(ai);
  }
  log_value += std::lgamma(d.total()) - std::lgamma(d.total() + n);
  return log_value;
}

CountVector multinomial_sample(std::int64_t n, std::span<const double> p,
                               Rng& rng) {
  if (n < 0) throw Error(ErrorCode::InvalidInput, "multinomial needs n >= 0");
  if (p.empty()) throw Error(ErrorCode::InvalidInput, "empty probability vector");
  double remaining_mass = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::InvalidInput, "negative cell probability");
    }
    remaining_mass += v;
  }
  if (!(remaining_mass > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "cell probabilities sum to zero");
  }
  std::vector<std::int64_t> counts(p.size(), 0);
  std::int64_t remaining = n;
  for (std::size_t i = 0; i + 1 < p.size() && remaining > 0; ++i) {
    if (p[i] > 0.0) {
      const double q = std::min(p[i] / remaining_mass, 1.0);
      counts[i] = rng.binomial(remaining, q);
      remaining -= counts[i];
    }
    remaining_mass -= p[i];
    if (!(remaining_mass > 0.0)) break;
  }
  if (remaining > 0) {
    // Remainder goes to the last cell with positive probability.
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] == 0.0) --last;
    counts[last] += remaining;
  }
  return CountVector(std::move(counts));
}

}  // namespace dirprior
