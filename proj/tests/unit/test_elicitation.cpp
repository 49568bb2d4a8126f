#include <doctest.h>

#include <cmath>

#include "dirprior/elicitation.hpp"
#include "dirprior/error.hpp"

using namespace dirprior;

namespace {

SubSimplex beta_region() { return from_lower_bounds(std::vector<double>{0.25, 0.25}); }

// Exact content of [0.25, 0.75] under beta(1 + tau/2, 1 + tau/2).
double beta_content(double tau) {
  return interval_probability_beta(DirichletParams({1.0 + tau / 2, 1.0 + tau / 2}), 0.25,
                                   0.75);
}

}  // namespace

TEST_CASE("beta region with the default tolerance") {
  Rng rng(1);
  const ElicitedPrior p = elicit(beta_region(), std::nullopt, {}, rng);
  // Probes 1, 2, 4, ..., 32 bracket gamma; the first bisection midpoint is within epsilon.
  CHECK(p.mode_scale.tau == 24.0);
  CHECK(p.params.alpha() == std::vector<double>{13.0, 13.0});
  CHECK(p.achieved_content == doctest::Approx(0.99326).epsilon(1e-4));
  CHECK(p.content_std_error == 0.0);
  CHECK(p.iterations == 7);
  REQUIRE(p.trace.size() == 8);
  CHECK(p.trace.front().tau == 0.0);
  CHECK(p.trace.front().content == doctest::Approx(0.5));
  CHECK(!p.uniform_sufficient);
}

TEST_CASE("beta region with a tight tolerance") {
  Rng rng(1);
  ElicitationConfig cfg;
  cfg.epsilon = 0.001;
  const ElicitedPrior p = elicit(beta_region(), std::nullopt, cfg, rng);
  CHECK(p.mode_scale.tau == 22.0);
  CHECK(p.params.alpha() == std::vector<double>{12.0, 12.0});
  CHECK(std::abs(p.achieved_content - cfg.gamma) <= cfg.epsilon);
}

TEST_CASE("property: result is a genuine root within epsilon for k = 2") {
  Rng rng(2);
  for (double l = 0.05; l < 0.45; l += 0.05) {
    for (double eps : {0.005, 0.001, 0.0002}) {
      const SubSimplex region = from_lower_bounds(std::vector<double>{l, 0.4 - l + 0.1});
      ElicitationConfig cfg;
      cfg.epsilon = eps;
      const ElicitedPrior p = elicit(region, std::nullopt, cfg, rng);
      REQUIRE(std::abs(p.achieved_content - cfg.gamma) <= eps);
      // Cross-check against a direct beta evaluation.
      const double direct = interval_probability_beta(p.params, region.lower()[0],
                                                      region.upper()[0]);
      REQUIRE(direct == doctest::Approx(p.achieved_content).epsilon(1e-14));
    }
  }
}

TEST_CASE("beta content is increasing in tau") {
  double prev = beta_content(0.0);
  for (double tau = 0.5; tau < 200.0; tau += 0.5) {
    const double c = beta_content(tau);
    REQUIRE(c > prev);
    prev = c;
  }
}

TEST_CASE("property: bisection agrees with a fine tau grid") {
  // The smallest grid tau reaching gamma - epsilon bounds the solver's tau from below,
  // the largest grid tau under gamma + epsilon bounds it from above.
  Rng rng(3);
  const ElicitationConfig cfg;
  const ElicitedPrior p = elicit(beta_region(), std::nullopt, cfg, rng);
  double lowest = -1.0;
  double highest = -1.0;
  for (double tau = 0.0; tau <= 50.0; tau += 0.01) {
    const double c = beta_content(tau);
    if (lowest < 0.0 && c >= cfg.gamma - cfg.epsilon) lowest = tau;
    if (c <= cfg.gamma + cfg.epsilon) highest = tau;
  }
  CHECK(p.mode_scale.tau >= lowest - 0.01);
  CHECK(p.mode_scale.tau <= highest + 0.01);
}

TEST_CASE("uniform prior is sufficient for a wide region") {
  Rng rng(4);
  const SubSimplex wide = from_lower_bounds(std::vector<double>{0.001, 0.002});
  const ElicitedPrior p = elicit(wide, std::nullopt, {}, rng);
  CHECK(p.uniform_sufficient);
  CHECK(p.params.is_uniform());
  CHECK(p.mode_scale.tau == 0.0);
  CHECK(p.iterations == 0);
  CHECK(p.achieved_content == doctest::Approx(0.997));

  const SubSimplex full = from_lower_bounds(std::vector<double>{0.0, 0.0, 0.0});
  CHECK(elicit(full, std::nullopt, {}, rng).uniform_sufficient);
}

TEST_CASE("Monte Carlo elicitation is reproducible") {
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.2, 0.2, 0.3, 0.2});
  Rng a(11);
  Rng b(11);
  const ElicitedPrior pa = elicit(region, std::nullopt, {}, a);
  const ElicitedPrior pb = elicit(region, std::nullopt, {}, b);
  CHECK(pa.trace == pb.trace);
  CHECK(pa.params == pb.params);
  CHECK(std::abs(pa.achieved_content - 0.99) <= 0.005);
  CHECK(pa.content_std_error > 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(pa.mode_scale.xi[i] == doctest::Approx(region.centroid()[i]));
  }
}

TEST_CASE("user supplied mode") {
  Rng rng(5);
  const SubSimplex region = beta_region();
  const ElicitedPrior p = elicit(region, std::vector<double>{0.4, 0.6}, {}, rng);
  CHECK(p.mode_scale.xi == std::vector<double>{0.4, 0.6});
  CHECK(std::abs(p.achieved_content - 0.99) <= 0.005);
  CHECK(p.params.alpha()[0] < p.params.alpha()[1]);

  try {
    elicit(region, std::vector<double>{0.8, 0.2}, {}, rng);
    FAIL("expected InvalidMode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMode);
    CHECK(e.index() == std::optional<std::size_t>{0});
  }
  CHECK_THROWS_AS(elicit(region, std::vector<double>{0.25, 0.75}, {}, rng), Error);
  CHECK_THROWS_AS(elicit(region, std::vector<double>{0.5, 0.5, 0.0}, {}, rng), Error);
}

TEST_CASE("invalid configuration and non-convergence") {
  Rng rng(6);
  ElicitationConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(elicit(beta_region(), std::nullopt, cfg, rng), Error);
  cfg = {};
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(elicit(beta_region(), std::nullopt, cfg, rng), Error);

  cfg = {};
  cfg.max_iterations = 3;
  try {
    elicit(beta_region(), std::nullopt, cfg, rng);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
  cfg = {};
  cfg.tau_cap = 8.0;
  try {
    elicit(beta_region(), std::nullopt, cfg, rng);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("deflation leaves a non-conflicting prior alone") {
  Rng rng(7);
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.0, 0.0, 0.0});
  ElicitedPrior uniform;
  uniform.params = DirichletParams::uniform(3);
  uniform.mode_scale = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.0};
  const DeflationResult r =
      deflate_for_conflict(uniform, region, CountVector({3, 5, 2}), {}, rng);
  CHECK(!r.deflated);
  CHECK(r.conflict.p_value == 1.0);
  CHECK(r.steps.size() == 1);
  CHECK(r.prior.params == uniform.params);
}

TEST_CASE("deflation halves tau until the conflict clears") {
  Rng rng(8);
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.7, 0.05, 0.05});
  ElicitedPrior strong;
  strong.mode_scale = {{0.8, 0.1, 0.1}, 5000.0};
  strong.params = params_from_mode_scale(strong.mode_scale);
  const CountVector f({400, 300, 300});
  DeflationConfig cfg;
  cfg.conflict_draws = 2000;
  const DeflationResult r = deflate_for_conflict(strong, region, f, cfg, rng);
  CHECK(r.deflated);
  CHECK(r.steps.front().content < cfg.threshold);
  CHECK(r.steps.back().content >= cfg.threshold);
  CHECK(r.conflict.p_value >= cfg.threshold);
  CHECK(r.prior.mode_scale.tau < strong.mode_scale.tau);
  CHECK(r.prior.mode_scale.xi == strong.mode_scale.xi);
  for (std::size_t i = 1; i < r.steps.size(); ++i) {
    CHECK(r.steps[i].tau == doctest::Approx(r.steps[i - 1].tau / 2));
  }
  CHECK(r.prior.achieved_content < 0.99);
}

TEST_CASE("deflation gives up once the prior is almost uniform") {
  Rng rng(9);
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.0, 0.0});
  ElicitedPrior p;
  p.mode_scale = {{0.5, 0.5}, 4.0};
  p.params = params_from_mode_scale(p.mode_scale);
  DeflationConfig cfg;
  cfg.threshold = 0.999;
  cfg.conflict_draws = 500;
  try {
    deflate_for_conflict(p, region, CountVector({0, 40}), cfg, rng);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}
