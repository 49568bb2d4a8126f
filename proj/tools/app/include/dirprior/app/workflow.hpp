#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dirprior/app/io.hpp"

namespace dirprior::app {

/// Fixed stream ids per workflow stage, so a stage's output depends only
/// on its inputs and the seed, never on what ran before it.
enum class StageStream : std::uint64_t {
  Elicit = 1,
  Bias = 2,
  Check = 3,
  Infer = 4,
  Plot = 5,
};

Rng stage_rng(std::uint64_t seed, StageStream stage);

struct ElicitRequest {
  ElicitationConfig config;
  std::optional<std::vector<double>> mode;

  /// Keys: gamma, epsilon, draws, max_iterations, mode.
  static ElicitRequest from_json(const json& j);
};

struct BiasRequest {
  double delta = 0.01;
  BiasConfig config;
  /// Extra deltas to report alongside the main one; informational only.
  std::vector<double> delta_sweep;

  /// Keys: delta, outer_draws, posterior_draws, prior_content_draws, n,
  /// budget_factor, threads, delta_sweep. n defaults to the data total.
  static BiasRequest from_json(const json& j);
};

struct CheckRequest {
  std::size_t draws = 10000;
  bool deflate = false;
  DeflationConfig deflation;

  /// Keys: draws, deflate, threshold, content_draws.
  static CheckRequest from_json(const json& j);
};

struct InferRequest {
  double delta = 0.01;
  std::size_t prior_draws = 10000;
  std::size_t posterior_draws = 10000;

  /// Keys: delta, prior_draws, posterior_draws, draws (sets both).
  static InferRequest from_json(const json& j);
};

ElicitedPrior run_elicit(const SubSimplex& region, const ElicitRequest& req,
                         std::uint64_t seed);

/// Bias report JSON; includes a "sweep" array when delta_sweep is set.
json run_bias(const DirichletParams& prior, const ContingencyShape& shape,
              const BiasRequest& req, std::uint64_t seed,
              std::function<void(double)> on_progress = {});

/// Conflict report JSON; with deflate set and a region, also "deflation".
json run_check(const ElicitedPrior& prior, const std::optional<SubSimplex>& region,
               const Table& data, const CheckRequest& req, std::uint64_t seed);

InferenceReport run_infer(const DirichletParams& prior, const Table& data,
                          const InferRequest& req, std::uint64_t seed);

/// ElicitedPrior wrapper for a bare alpha vector (mode from alpha where it
/// exists, centroid of the simplex otherwise).
ElicitedPrior prior_from_params(const DirichletParams& params);

}  // namespace dirprior::app
